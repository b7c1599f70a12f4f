"""OTOC butterfly evolution under the z-direction DM interaction.

Units have hbar = 1, so time is dimensionless. The static operator ``O1`` is
the qutrit swap ``|0> <-> |2>`` lifted to the pair; ``O2(0) = O1`` and
``O2(t) = U(t)^dagger O1 U(t)`` with ``U(t) = exp(-i H t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError, NonPhysicalResultError
from .linalg import CMat, as_cmat, expm_unitary, kron
from .states import BipartiteState

_R2 = 1.0 / math.sqrt(2.0)


class Placement(str, Enum):
    ON_A = "a"
    ON_B = "b"
    ON_BOTH = "both"


class UpdateMode(str, Enum):
    CONJUGATION = "conj"
    RAW_BUTTERFLY = "raw"


@dataclass(frozen=True)
class ScrambleConfig:
    """Interaction strength and the knobs the butterfly circuit leaves open.

    Parameters
    ----------
    D : float
        DM interaction strength, ``0 <= D <= 1``.
    placement : Placement
        Which qutrit(s) the swap acts on.
    update_mode : UpdateMode
        ``CONJUGATION`` evolves the state as ``V rho V^dagger``;
        ``RAW_BUTTERFLY`` uses ``V rho`` directly.
    hermitize_raw : bool
        In raw mode, replace ``V rho`` by its Hermitian part at unit trace.
    """

    D: float = 0.6
    placement: Placement = Placement.ON_A
    update_mode: UpdateMode = UpdateMode.CONJUGATION
    hermitize_raw: bool = True

    def __post_init__(self):
        object.__setattr__(self, "D", _check_coupling(self.D))
        object.__setattr__(self, "placement", Placement(self.placement))
        object.__setattr__(self, "update_mode", UpdateMode(self.update_mode))


@dataclass(frozen=True)
class OtocSample:
    t: float
    M: complex
    S: float


def _check_coupling(D) -> float:
    D = float(D)
    if not (0.0 <= D <= 1.0):
        raise InvalidParameterError(f"interaction strength D must lie in [0, 1], got {D}")
    return D


def swap02() -> CMat:
    return np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.complex128)


def spin_matrices() -> tuple[CMat, CMat]:
    """Spin-1 ``(sigma_x, sigma_y)``."""
    sx = _R2 * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128)
    sy = _R2 * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128)
    return sx, sy


def dm_hamiltonian(D: float) -> CMat:
    """``D * (sx (x) sy - sy (x) sx)``."""
    D = _check_coupling(D)
    sx, sy = spin_matrices()
    return D * (kron(sx, sy) - kron(sy, sx))


def lift_operator(o, placement: Placement | str = Placement.ON_A) -> CMat:
    o = as_cmat(o)
    if o.shape != (3, 3):
        raise DimensionMismatchError(f"single-qutrit operator must be 3x3, got {o.shape}")
    eye = np.eye(3, dtype=np.complex128)
    placement = Placement(placement)
    if placement is Placement.ON_A:
        return kron(o, eye)
    if placement is Placement.ON_B:
        return kron(eye, o)
    return kron(o, o)


def static_operator(placement: Placement | str = Placement.ON_A) -> CMat:
    return lift_operator(swap02(), placement)


def evolve_operator(o2_0, D: float, t: float) -> CMat:
    """Heisenberg picture ``U^dagger O U`` with ``U = exp(-i H_z(D) t)``."""
    o2_0 = as_cmat(o2_0)
    u = expm_unitary(dm_hamiltonian(D), t, sign=-1)
    return u.conj().T @ o2_0 @ u


def butterfly(o1, o2_t) -> CMat:
    """``V = O2(t) O1 O2(t) O1``."""
    o1 = as_cmat(o1)
    o2_t = as_cmat(o2_t)
    if o1.shape != (9, 9) or o2_t.shape != (9, 9):
        raise DimensionMismatchError(f"butterfly needs two 9x9 operators, got {o1.shape}, {o2_t.shape}")
    return o2_t @ o1 @ o2_t @ o1


def butterfly_operator(cfg: ScrambleConfig, t: float) -> CMat:
    o1 = static_operator(cfg.placement)
    return butterfly(o1, evolve_operator(o1, cfg.D, t))


def _otoc_from_butterfly(v: CMat, rho: CMat, t: float) -> OtocSample:
    m = complex(np.trace(v @ rho))
    return OtocSample(float(t), m, 2.0 * (1.0 - m.real))


def otoc(state: BipartiteState, cfg: ScrambleConfig, t: float) -> OtocSample:
    """``M = Tr(V(t) rho)`` and ``S(t) = 2 (1 - Re M)``."""
    return _otoc_from_butterfly(butterfly_operator(cfg, t), state.rho, t)


def otoc_commutator(state: BipartiteState, cfg: ScrambleConfig, t: float) -> float:
    """``Tr([O2(t), O1]^dagger [O2(t), O1] rho)``, the unsimplified OTOC."""
    o1 = static_operator(cfg.placement)
    o2 = evolve_operator(o1, cfg.D, t)
    c = o2 @ o1 - o1 @ o2
    return float(np.trace(c.conj().T @ c @ state.rho).real)


def _apply_butterfly(v: CMat, state: BipartiteState, cfg: ScrambleConfig) -> BipartiteState:
    if cfg.update_mode is UpdateMode.CONJUGATION:
        out = state.with_rho(v @ state.rho @ v.conj().T)
        defects = out.physical_defects()
        if defects:
            raise NonPhysicalResultError("conjugation-mode evolution broke the state: " + "; ".join(defects))
        return out
    raw = v @ state.rho
    if cfg.hermitize_raw:
        herm = 0.5 * (raw + raw.conj().T)
        tr = np.trace(herm).real
        if abs(tr) < 1e-12:
            raise NonPhysicalResultError("Hermitian part of V rho has vanishing trace; cannot normalise")
        raw = herm / tr
    return state.with_rho(raw)


def scrambled_state(state: BipartiteState, cfg: ScrambleConfig, t: float) -> BipartiteState:
    """The state after the butterfly circuit at time ``t``.

    Raises
    ------
    NonPhysicalResultError
        In conjugation mode, if the output is not a valid density matrix.
    """
    return _apply_butterfly(butterfly_operator(cfg, t), state, cfg)


def scramble_point(state: BipartiteState, cfg: ScrambleConfig, t: float) -> tuple[OtocSample, BipartiteState]:
    """OTOC sample and scrambled state sharing one butterfly operator."""
    v = butterfly_operator(cfg, t)
    return _otoc_from_butterfly(v, state.rho, t), _apply_butterfly(v, state, cfg)
