"""Bound entangled two-qutrit states.

Kets are columns in the computational basis; ``|i>_A |j>_B`` sits at index
``3*i + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import math

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError, NonPhysicalResultError
from .linalg import QUTRIT_PAIR, BipartiteDims, CMat, as_cmat, eigvals_hermitian, hermiticity_error, kron

PHYSICAL_TOL = 1e-10


class Family(str, Enum):
    BENNETT = "bennett"
    JURKOWSKI = "jurkowski"
    HORODECKI1 = "horodecki1"
    HORODECKI2 = "horodecki2"


PARAM_NAMES = {
    Family.BENNETT: (),
    Family.JURKOWSKI: ("eps1", "eps2", "eps3"),
    Family.HORODECKI1: ("alpha",),
    Family.HORODECKI2: ("alpha",),
}


@dataclass(frozen=True)
class StateSpec:
    """A state family plus its named parameters, validated on creation."""

    family: Family
    params: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        params = tuple((str(k), float(v)) for k, v in self.params)
        object.__setattr__(self, "params", params)
        expected = PARAM_NAMES[fam]
        names = tuple(k for k, _ in params)
        if names != expected:
            raise InvalidParameterError(
                f"{fam.value} takes parameters {expected}, got {names}"
            )
        _check_ranges(fam, dict(params))

    @classmethod
    def of(cls, family: Family | str, **params: float) -> "StateSpec":
        fam = Family(family)
        unknown = set(params) - set(PARAM_NAMES[fam])
        if unknown:
            raise InvalidParameterError(f"unknown parameters for {fam.value}: {sorted(unknown)}")
        missing = [k for k in PARAM_NAMES[fam] if k not in params]
        if missing:
            raise InvalidParameterError(f"missing parameters for {fam.value}: {missing}")
        return cls(fam, tuple((k, params[k]) for k in PARAM_NAMES[fam]))

    def get(self, name: str) -> float:
        return dict(self.params)[name]

    def label(self) -> str:
        if not self.params:
            return self.family.value
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family.value}({inner})"


def _check_ranges(fam: Family, p: dict[str, float]) -> None:
    for k, v in p.items():
        if not math.isfinite(v):
            raise InvalidParameterError(f"{k} must be finite, got {v}")
    if fam is Family.JURKOWSKI:
        bad = [k for k, v in p.items() if v <= 0.0]
        if bad:
            raise InvalidParameterError(f"Jurkowski parameters must be > 0: {bad}")
    elif fam is Family.HORODECKI1:
        if not 0.0 <= p["alpha"] <= 1.0:
            raise InvalidParameterError(f"Horodecki state 1 needs 0 <= alpha <= 1, got {p['alpha']}")
    elif fam is Family.HORODECKI2:
        if not 2.0 <= p["alpha"] <= 5.0:
            raise InvalidParameterError(f"Horodecki state 2 needs 2 <= alpha <= 5, got {p['alpha']}")


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A 9x9 two-qutrit density matrix with its provenance.

    ``spec`` is ``None`` for ad-hoc matrices. Construction does not validate;
    call :meth:`check_physical` (the family constructors always do).
    """

    rho: CMat
    spec: StateSpec | None = None
    dims: BipartiteDims = field(default=QUTRIT_PAIR)

    def __post_init__(self):
        rho = as_cmat(self.rho).copy()
        n = self.dims.total
        if rho.shape != (n, n):
            raise DimensionMismatchError(f"density matrix must be {n}x{n}, got {rho.shape}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def physical_defects(self, tol: float = PHYSICAL_TOL) -> list[str]:
        """Human-readable list of violated density-matrix invariants."""
        defects = []
        herm = hermiticity_error(self.rho)
        if herm > tol:
            defects.append(f"non-Hermitian (max |rho - rho^dagger| = {herm:.3e})")
            return defects
        tr = np.trace(self.rho)
        if abs(tr - 1.0) > tol:
            defects.append(f"trace {tr.real:.12g}{tr.imag:+.3g}j != 1")
        lam_min = eigvals_hermitian(self.rho)[0]
        if lam_min < -tol:
            defects.append(f"negative eigenvalue {lam_min:.3e}")
        return defects

    def is_physical(self, tol: float = PHYSICAL_TOL) -> bool:
        return not self.physical_defects(tol)

    def check_physical(self, tol: float = PHYSICAL_TOL) -> "BipartiteState":
        defects = self.physical_defects(tol)
        if defects:
            name = self.spec.label() if self.spec else "state"
            raise NonPhysicalResultError(f"{name}: " + "; ".join(defects))
        return self

    def with_rho(self, rho) -> "BipartiteState":
        return BipartiteState(rho, self.spec, self.dims)


def basis_ket(i: int, j: int) -> np.ndarray:
    v = np.zeros(9, dtype=np.complex128)
    v[3 * i + j] = 1.0
    return v


def _product(a, b) -> np.ndarray:
    return kron(np.asarray(a, dtype=np.complex128)[:, None], np.asarray(b, dtype=np.complex128)[:, None])[:, 0]


def _proj(v) -> CMat:
    return np.outer(v, v.conj())


def bennett_tiles() -> list[np.ndarray]:
    """The five product vectors of the tiles unextendible product basis."""
    e0, e1, e2 = np.eye(3)
    r2 = 1.0 / math.sqrt(2.0)
    ones = (e0 + e1 + e2) / math.sqrt(3.0)
    return [
        _product(e0, r2 * (e0 - e1)),
        _product(r2 * (e0 - e1), e2),
        _product(e2, r2 * (e1 - e2)),
        _product(r2 * (e1 - e2), e0),
        _product(ones, ones),
    ]


def bennett_state() -> BipartiteState:
    """``(I - sum_i |psi_i><psi_i|) / 4`` over the five tile vectors."""
    rho = np.eye(9, dtype=np.complex128)
    for psi in bennett_tiles():
        rho -= _proj(psi)
    return BipartiteState(rho / 4.0, StateSpec(Family.BENNETT)).check_physical()


def jurkowski_normalization(eps1: float, eps2: float, eps3: float) -> float:
    return eps1 + 1.0 / eps3 + 1.0 / eps1 + eps2 + eps3 + 1.0 / eps2 + 3.0


def jurkowski_state(eps1: float, eps2: float, eps3: float) -> BipartiteState:
    spec = StateSpec.of(Family.JURKOWSKI, eps1=eps1, eps2=eps2, eps3=eps3)
    m = np.zeros((9, 9), dtype=np.complex128)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = 1.0
    m[1, 1] = eps1
    m[2, 2] = 1.0 / eps3
    m[3, 3] = 1.0 / eps1
    m[5, 5] = eps2
    m[6, 6] = eps3
    m[7, 7] = 1.0 / eps2
    m /= jurkowski_normalization(eps1, eps2, eps3)
    return BipartiteState(m, spec).check_physical()


def horodecki_state1(alpha: float) -> BipartiteState:
    spec = StateSpec.of(Family.HORODECKI1, alpha=alpha)
    den = 8.0 * alpha + 1.0
    a = alpha / den
    m = np.zeros((9, 9), dtype=np.complex128)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            m[i, j] = a
    for i in range(9):
        m[i, i] = a
    m[6, 6] = m[8, 8] = (alpha + 1.0) / (2.0 * den)
    m[6, 8] = m[8, 6] = math.sqrt(1.0 - alpha * alpha) / (2.0 * den)
    return BipartiteState(m, spec).check_physical()


def maximally_entangled() -> CMat:
    """``|psi><psi|`` with ``|psi> = (|00> + |11> + |22>) / sqrt(3)``."""
    psi = (basis_ket(0, 0) + basis_ket(1, 1) + basis_ket(2, 2)) / math.sqrt(3.0)
    return _proj(psi)


def horodecki_state2(alpha: float) -> BipartiteState:
    """``(2/7) Delta + (alpha/7) delta+ + ((5 - alpha)/7) delta-``.

    The separable / bound / free ranges are ``[2, 3]``, ``(3, 4]``, ``(4, 5]``.
    """
    spec = StateSpec.of(Family.HORODECKI2, alpha=alpha)
    plus = sum(_proj(basis_ket(i, j)) for i, j in ((0, 1), (1, 2), (2, 0))) / 3.0
    minus = sum(_proj(basis_ket(i, j)) for i, j in ((1, 0), (2, 1), (0, 2))) / 3.0
    rho = (2.0 / 7.0) * maximally_entangled() + (alpha / 7.0) * plus + ((5.0 - alpha) / 7.0) * minus
    return BipartiteState(rho, spec).check_physical()


def build_state(spec: StateSpec) -> BipartiteState:
    p = dict(spec.params)
    if spec.family is Family.BENNETT:
        return bennett_state()
    if spec.family is Family.JURKOWSKI:
        return jurkowski_state(p["eps1"], p["eps2"], p["eps3"])
    if spec.family is Family.HORODECKI1:
        return horodecki_state1(p["alpha"])
    return horodecki_state2(p["alpha"])


# Jurkowski one-parameter slices: eps -> (eps1, eps2, eps3).
JURKOWSKI_PRESETS = {
    "a": lambda e: (1.0, 1.0, e),
    "b": lambda e: (1.0, e, e),
    "c": lambda e: (e, e, e),
}

DEFAULT_SPECS = {
    Family.BENNETT: StateSpec(Family.BENNETT),
    Family.JURKOWSKI: StateSpec.of(Family.JURKOWSKI, eps1=1.0, eps2=4.0, eps3=4.0),
    Family.HORODECKI1: StateSpec.of(Family.HORODECKI1, alpha=0.5),
    Family.HORODECKI2: StateSpec.of(Family.HORODECKI2, alpha=3.7),
}


def spec_for_value(family: Family | str, value: float, preset: str = "b") -> StateSpec:
    """State spec for one point of a one-parameter sweep."""
    fam = Family(family)
    if fam is Family.JURKOWSKI:
        try:
            e1, e2, e3 = JURKOWSKI_PRESETS[preset](value)
        except KeyError:
            raise InvalidParameterError(f"unknown Jurkowski preset {preset!r}; use a, b or c") from None
        return StateSpec.of(fam, eps1=e1, eps2=e2, eps3=e3)
    if fam is Family.BENNETT:
        raise InvalidParameterError("the Bennett state has no parameter to sweep")
    return StateSpec.of(fam, alpha=value)


def product_state(rho_a, rho_b) -> BipartiteState:
    return BipartiteState(kron(rho_a, rho_b))
