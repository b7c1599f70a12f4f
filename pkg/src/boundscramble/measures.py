"""Negativity, CCNR witness and the free / bound classification."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .linalg import Subsystem, kron, partial_trace, partial_transpose, realign, trace_norm
from .states import BipartiteState

WITNESS_TOL = 1e-9
_CLAMP = 1e-12


class Classification(str, Enum):
    FREE = "free"
    BOUND = "bound"
    UNDETECTED = "undetected"


@dataclass(frozen=True)
class MeasureRecord:
    negativity: float
    ccnr: float
    classification: Classification
    realignment: float = math.nan


def negativity(state: BipartiteState, subsystem: Subsystem | str = Subsystem.B) -> float:
    """``(||rho^T||_1 - 1) / 2`` with tiny negatives clamped to zero."""
    pt = partial_transpose(state.rho, state.dims, subsystem)
    n = 0.5 * (trace_norm(pt) - 1.0)
    if -_CLAMP < n < 0.0:
        return 0.0
    return n


def reduced_states(state: BipartiteState):
    rho_a = partial_trace(state.rho, state.dims, Subsystem.B)
    rho_b = partial_trace(state.rho, state.dims, Subsystem.A)
    return rho_a, rho_b


def ccnr(state: BipartiteState) -> float:
    """Covariance-enhanced realignment witness.

    ``||(rho - rho_A (x) rho_B)^R||_1 - sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))``;
    a positive value certifies entanglement.
    """
    rho_a, rho_b = reduced_states(state)
    corr = state.rho - kron(rho_a, rho_b)
    deficit_a = 1.0 - np.trace(rho_a @ rho_a).real
    deficit_b = 1.0 - np.trace(rho_b @ rho_b).real
    # Unnormalised raw-mode matrices can give a negative product.
    bound = math.sqrt(max(deficit_a * deficit_b, 0.0))
    return trace_norm(realign(corr, state.dims)) - bound


def realignment(state: BipartiteState) -> float:
    """Plain realignment witness ``||rho^R||_1 - 1``."""
    return trace_norm(realign(state.rho, state.dims)) - 1.0


def classify(neg: float, ccnr_value: float) -> Classification:
    if neg > WITNESS_TOL:
        return Classification.FREE
    if ccnr_value > WITNESS_TOL:
        return Classification.BOUND
    return Classification.UNDETECTED


def measure(state: BipartiteState, *, with_realignment: bool = False) -> MeasureRecord:
    n = negativity(state)
    c = ccnr(state)
    r = realignment(state) if with_realignment else math.nan
    return MeasureRecord(n, c, classify(n, c), r)
