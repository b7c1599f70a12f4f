"""Dense complex linear algebra for small bipartite operators.

Matrices are plain 2-D ``numpy`` arrays of ``complex128``. Bipartite index
convention: the composite index of ``|i>_A |j>_B`` is ``i * dimB + j``.
"""
from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from . import _kernels
from .errors import ConvergenceError, DimensionMismatchError, NotHermitianError

CMat = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class BipartiteDims(NamedTuple):
    dim_a: int = 3
    dim_b: int = 3

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b


QUTRIT_PAIR = BipartiteDims(3, 3)


class Subsystem(str, Enum):
    A = "A"
    B = "B"


def as_cmat(m) -> CMat:
    """Return ``m`` as a 2-D complex128 array, rejecting NaN/Inf."""
    out = np.asarray(m, dtype=np.complex128)
    if out.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix has non-finite entries")
    return out


def hermiticity_error(h: CMat) -> float:
    """Largest entrywise deviation ``max |h - h^dagger|``."""
    if h.shape[0] != h.shape[1]:
        return np.inf
    return float(np.max(np.abs(h - h.conj().T), initial=0.0))


def dagger(m: CMat) -> CMat:
    return m.conj().T


def kron(a, b) -> CMat:
    """Kronecker product ``a (x) b``.

    Entry ``(i*rb + k, j*cb + l)`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = as_cmat(a)
    b = as_cmat(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def eig_hermitian(h) -> tuple[npt.NDArray[np.float64], CMat]:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian to within ``HERMITIAN_TOL`` entrywise.

    Returns
    -------
    eigenvalues : ndarray of float
        Ascending.
    eigenvectors : ndarray of complex
        Unitary; column ``k`` belongs to ``eigenvalues[k]``.

    Raises
    ------
    NotHermitianError
        If ``h`` is not square or not Hermitian.
    ConvergenceError
        If ``JACOBI_MAX_SWEEPS`` sweeps do not reach ``JACOBI_TOL``.
    """
    h = as_cmat(h)
    err = hermiticity_error(h)
    if err > HERMITIAN_TOL:
        raise NotHermitianError(f"max |h - h^dagger| = {err:.3e} exceeds {HERMITIAN_TOL:g}")
    sym = np.ascontiguousarray(0.5 * (h + h.conj().T))
    w, v, sweeps = _kernels.jacobi_eigh(sym, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return w, v


def eigvals_hermitian(h) -> npt.NDArray[np.float64]:
    return eig_hermitian(h)[0]


def singular_values(m) -> npt.NDArray[np.float64]:
    """Singular values of ``m`` in descending order.

    Taken from the Hermitian dilation ``[[0, m], [m^dagger, 0]]``, whose
    spectrum is ``+-sigma_k`` padded with zeros. Unlike ``sqrt(eig(m^dagger m))``
    this keeps near-zero singular values accurate to machine epsilon.
    """
    m = as_cmat(m)
    r, c = m.shape
    dil = np.zeros((r + c, r + c), dtype=np.complex128)
    dil[:r, r:] = m
    dil[r:, :r] = m.conj().T
    w = eig_hermitian(dil)[0]
    k = min(r, c)
    sv = w[::-1][:k]
    return np.where(sv < 0.0, 0.0, sv)


def trace_norm(m) -> float:
    """Sum of singular values of ``m``.

    Hermitian input takes the shortcut ``sum |eigenvalue|``.
    """
    m = as_cmat(m)
    if m.shape[0] == m.shape[1] and hermiticity_error(m) <= 1e-14 * max(1.0, np.abs(m).max(initial=0.0)):
        return float(np.sum(np.abs(eig_hermitian(m)[0])))
    return float(np.sum(singular_values(m)))


def expm_unitary(h, t: float, sign: int = -1) -> CMat:
    """``exp(sign * i * h * t)`` for Hermitian ``h`` via its eigenbasis."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    w, v = eig_hermitian(h)
    phases = np.exp(1j * sign * w * t)
    return (v * phases) @ v.conj().T


def _check_bipartite(m, dims: BipartiteDims) -> CMat:
    m = as_cmat(m)
    n = dims.total
    if m.shape != (n, n):
        raise DimensionMismatchError(
            f"matrix shape {m.shape} does not match bipartite dims {tuple(dims)}"
        )
    return m


def partial_transpose(m, dims: BipartiteDims = QUTRIT_PAIR, subsystem: Subsystem | str = Subsystem.B) -> CMat:
    """Transpose the indices of one subsystem.

    For subsystem B, entry ``((i,l),(k,j))`` of the result equals entry
    ``((i,j),(k,l))`` of ``m``.
    """
    m = _check_bipartite(m, dims)
    da, db = dims
    t = m.reshape(da, db, da, db)
    if Subsystem(subsystem) is Subsystem.B:
        t = t.transpose(0, 3, 2, 1)
    else:
        t = t.transpose(2, 1, 0, 3)
    return np.ascontiguousarray(t.reshape(da * db, da * db))


def partial_trace(m, dims: BipartiteDims = QUTRIT_PAIR, traced: Subsystem | str = Subsystem.B) -> CMat:
    """Trace out one subsystem; ``traced=B`` returns the reduced operator on A."""
    m = _check_bipartite(m, dims)
    da, db = dims
    t = m.reshape(da, db, da, db)
    if Subsystem(traced) is Subsystem.B:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def realign(m, dims: BipartiteDims = QUTRIT_PAIR) -> CMat:
    """Realignment ``R[(i,k),(j,l)] = m[(i,j),(k,l)]``, shape ``(dimA**2, dimB**2)``."""
    m = _check_bipartite(m, dims)
    da, db = dims
    t = m.reshape(da, db, da, db).transpose(0, 2, 1, 3)
    return np.ascontiguousarray(t.reshape(da * da, db * db))


def is_unitary(u, tol: float = 1e-9) -> bool:
    u = as_cmat(u)
    if u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)
