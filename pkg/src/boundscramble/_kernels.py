"""Cyclic Jacobi eigensolver for small dense Hermitian matrices.

Two implementations share one contract::

    w, v, sweeps = jacobi_eigh(a, tol, max_sweeps)

``w`` holds the eigenvalues in ascending order, the columns of ``v`` are the
matching orthonormal eigenvectors, and ``sweeps`` is the number of sweeps
used, or ``-1`` when ``max_sweeps`` ran out before the off-diagonal norm fell
below ``tol * max(1, ||a||_F)``.

``jacobi_eigh_loops`` is the scalar kernel compiled by numba.
``jacobi_eigh_numpy`` is the numpy fallback. It rotates n/2 disjoint pairs at
once (round-robin ordering), so each step is a handful of array operations.
``jacobi_eigh`` is whichever one the backend flag selects.
"""
from functools import lru_cache
import math

import numpy as np

from ._accel import USE_NUMBA, jit

# |zeta| above this makes zeta**2 overflow; tan(theta) ~ 1/(2 zeta) there.
_ZETA_BIG = 1.0e150


@jit
def _rotation(app, aqq, r):
    zeta = (aqq - app) / (2.0 * r)
    if abs(zeta) > _ZETA_BIG:
        t = 0.5 / zeta
    else:
        t = 1.0 / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
        if zeta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(1.0 + t * t)
    return t, c, t * c


def _jacobi_eigh_loops(a_in, tol, max_sweeps):
    n = a_in.shape[0]
    a = a_in.copy()
    v = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        v[i, i] = 1.0

    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j].real ** 2 + a[i, j].imag ** 2
    thresh = tol * max(1.0, math.sqrt(fro))

    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if math.sqrt(off) <= thresh:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            order = np.argsort(w)
            return w[order], v[:, order], sweep
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                ph = apq / r
                phc = ph.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                t, c, s = _rotation(app, aqq, r)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phc * akq
                    a[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * phc * vkq
                    v[k, q] = s * vkp + c * phc * vkq

    return np.zeros(n), v, -1


jacobi_eigh_loops = jit(_jacobi_eigh_loops)


@lru_cache(maxsize=None)
def _round_robin(n):
    """Disjoint (p, q) index arrays for each round of one Jacobi sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            x, y = players[i], players[m - 1 - i]
            if x < n and y < n:
                ps.append(min(x, y))
                qs.append(max(x, y))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigh_numpy(a_in, tol, max_sweeps):
    n = a_in.shape[0]
    a = np.array(a_in, dtype=np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    thresh = tol * max(1.0, np.linalg.norm(a))
    offdiag = ~np.eye(n, dtype=bool)
    rounds = _round_robin(n) if n > 1 else ()

    for sweep in range(max_sweeps + 1):
        if np.sqrt(np.sum(np.abs(a[offdiag]) ** 2)) <= thresh:
            w = a.diagonal().real.copy()
            order = np.argsort(w, kind="stable")
            return w[order], v[:, order], sweep
        if sweep == max_sweeps:
            break

        for p, q in rounds:
            apq = a[p, q]
            r = np.abs(apq)
            live = r > 0.0
            rs = np.where(live, r, 1.0)
            ph = np.where(live, apq / rs, 1.0)
            app = a[p, p].real
            aqq = a[q, q].real
            zeta = (aqq - app) / (2.0 * rs)
            with np.errstate(over="ignore"):
                t = np.where(
                    np.abs(zeta) > _ZETA_BIG,
                    0.5 / zeta,
                    np.sign(zeta + (zeta == 0.0)) / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta)),
                )
            t = np.where(live, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phc = ph.conj()

            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cp - s * phc * cq
            a[:, q] = s * cp + c * phc * cq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - (s * ph)[:, None] * rq
            a[q, :] = s[:, None] * rp + (c * ph)[:, None] * rq
            a[p, q] = np.where(live, 0.0, a[p, q])
            a[q, p] = np.where(live, 0.0, a[q, p])
            a[p, p] = np.where(live, app - t * r, a[p, p])
            a[q, q] = np.where(live, aqq + t * r, a[q, q])

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * phc * vq
            v[:, q] = s * vp + c * phc * vq

    return np.zeros(n), v, -1


jacobi_eigh = jacobi_eigh_loops if USE_NUMBA else jacobi_eigh_numpy
