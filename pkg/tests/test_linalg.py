import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from boundscramble import linalg
from boundscramble.errors import DimensionMismatchError, NotHermitianError
from boundscramble.linalg import Subsystem
from boundscramble.scrambler import dm_hamiltonian, spin_matrices

import oracles

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
mat3 = st.tuples(arrays(np.float64, (3, 3), elements=finite), arrays(np.float64, (3, 3), elements=finite)).map(
    lambda p: p[0] + 1j * p[1]
)


# kron ---------------------------------------------------------------------

def test_kron_identity():
    np.testing.assert_array_equal(linalg.kron(np.eye(3), np.eye(3)), np.eye(9))


def test_kron_rectangular_dims_and_entries(rng):
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 1))
    out = linalg.kron(a, b)
    assert out.shape == (6, 3)
    np.testing.assert_array_equal(out, oracles.kron_loops(a, b.astype(complex)))


@settings(max_examples=40, deadline=None)
@given(mat3, mat3, mat3, mat3)
def test_kron_mixed_product(a, b, c, d):
    lhs = linalg.kron(a, b) @ linalg.kron(c, d)
    rhs = linalg.kron(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.abs(rhs).max())


@settings(max_examples=30, deadline=None)
@given(mat3, mat3, mat3)
def test_kron_associative(a, b, c):
    lhs = linalg.kron(linalg.kron(a, b), c)
    rhs = linalg.kron(a, linalg.kron(b, c))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.abs(rhs).max())


# eig_hermitian ------------------------------------------------------------

def test_eig_diagonal():
    w, v = linalg.eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [1, 2, 3], atol=1e-14)
    assert abs(abs(v[0, 2]) - 1) < 1e-14


def test_eig_spin_x():
    sx, _ = spin_matrices()
    w, _ = linalg.eig_hermitian(sx)
    np.testing.assert_allclose(w, [-1, 0, 1], atol=1e-13)


def test_eig_dm_hamiltonian_spectrum_symmetric():
    h = dm_hamiltonian(0.6)
    w = linalg.eigvals_hermitian(h)
    w_neg = np.linalg.eigvalsh(-h)  # independent solver on -H
    np.testing.assert_allclose(w, w_neg, atol=1e-12)
    np.testing.assert_allclose(np.sort(w), np.sort(-w), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 9, 18])
def test_eig_reconstruction_and_unitarity(rng, n):
    h = oracles.random_hermitian(rng, n)
    w, v = linalg.eig_hermitian(h)
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm(h - v @ np.diag(w) @ v.conj().T) < 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-10
    assert abs(w.sum() - np.trace(h).real) < 1e-10
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h), atol=1e-10)


def test_eig_degenerate_and_zero():
    w, v = linalg.eig_hermitian(np.zeros((9, 9)))
    np.testing.assert_array_equal(w, 0)
    np.testing.assert_array_equal(v, np.eye(9))
    w, _ = linalg.eig_hermitian(oracles.max_entangled())
    np.testing.assert_allclose(w, [0] * 8 + [1], atol=1e-14)


def test_eig_rejects_non_hermitian():
    m = np.eye(3, dtype=complex)
    m[0, 1] = 1e-9
    with pytest.raises(NotHermitianError):
        linalg.eig_hermitian(m)
    with pytest.raises(NotHermitianError):
        linalg.eig_hermitian(np.ones((2, 3)))


def test_eig_convergence_failure(monkeypatch):
    from boundscramble.errors import ConvergenceError

    monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        linalg.eig_hermitian(dm_hamiltonian(1.0))


def test_eig_tolerates_rounding_level_asymmetry():
    h = dm_hamiltonian(0.6)
    h[0, 4] += 1e-13
    linalg.eig_hermitian(h)


# trace norm / singular values --------------------------------------------

def test_trace_norm_identity():
    assert linalg.trace_norm(np.eye(3)) == pytest.approx(3.0, abs=1e-14)


def test_trace_norm_rank_one_projector(rng):
    psi = rng.normal(size=9) + 1j * rng.normal(size=9)
    psi /= np.linalg.norm(psi)
    assert linalg.trace_norm(np.outer(psi, psi.conj())) == pytest.approx(1.0, abs=1e-13)


def test_trace_norm_partial_transpose_max_entangled():
    rho_t = oracles.partial_transpose_loops(oracles.max_entangled())
    expected = np.abs(np.linalg.eigvalsh(rho_t)).sum()
    assert expected == pytest.approx(3.0, abs=1e-12)
    assert linalg.trace_norm(linalg.partial_transpose(oracles.max_entangled())) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("shape", [(9, 9), (4, 9), (9, 2)])
def test_singular_values_match_svd(rng, shape):
    m = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    np.testing.assert_allclose(linalg.singular_values(m), np.linalg.svd(m, compute_uv=False), atol=1e-11)


def test_singular_values_near_zero_are_accurate():
    # rank-1 9x9: eight exact zero singular values must not come out ~1e-8
    v = np.arange(1, 10, dtype=complex)
    sv = linalg.singular_values(np.outer(v, v))
    assert np.all(sv[1:] < 1e-13)


def test_trace_norm_unitary_invariance(rng):
    for _ in range(10):
        m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        u = oracles.random_unitary(rng, 9)
        w = oracles.random_unitary(rng, 9)
        assert abs(linalg.trace_norm(u @ m @ w) - linalg.trace_norm(m)) < 1e-9


# expm_unitary -------------------------------------------------------------

def test_expm_at_zero_time_and_zero_hamiltonian():
    assert np.max(np.abs(linalg.expm_unitary(dm_hamiltonian(0.6), 0.0) - np.eye(9))) < 1e-14
    np.testing.assert_array_equal(linalg.expm_unitary(dm_hamiltonian(0.0), 3.7), np.eye(9))


def test_expm_matches_taylor_oracle():
    h = dm_hamiltonian(0.6)
    u = linalg.expm_unitary(h, 1.3, sign=-1)
    ref = oracles.expm_taylor(-1j * h * 1.3)
    assert np.linalg.norm(u - ref) < 1e-9


def test_expm_group_inverse_and_unitarity(rng):
    h = oracles.random_hermitian(rng, 9)
    for t in (0.3, 2.0, 7.5):
        u = linalg.expm_unitary(h, t)
        assert np.max(np.abs(u @ linalg.expm_unitary(h, -t) - np.eye(9))) < 1e-10
        assert linalg.is_unitary(u, 1e-10)
        # sign flips the direction of time
        assert np.max(np.abs(linalg.expm_unitary(h, t, sign=1) - linalg.expm_unitary(h, -t, sign=-1))) < 1e-12


def test_expm_rejects_bad_sign_and_non_hermitian():
    with pytest.raises(ValueError):
        linalg.expm_unitary(np.eye(3), 1.0, sign=0)
    with pytest.raises(NotHermitianError):
        linalg.expm_unitary(np.triu(np.ones((3, 3))), 1.0)


# partial transpose / trace / realign -------------------------------------

def test_partial_transpose_matches_index_oracle(rng):
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    for sub in ("A", "B"):
        np.testing.assert_array_equal(linalg.partial_transpose(m, subsystem=sub), oracles.partial_transpose_loops(m, subsystem=sub))


def test_partial_transpose_product_state(rng):
    ra, rb = oracles.random_density(rng, 3), oracles.random_density(rng, 3)
    out = linalg.partial_transpose(np.kron(ra, rb), subsystem=Subsystem.B)
    assert np.max(np.abs(out - np.kron(ra, rb.T))) < 1e-15


def test_partial_transpose_involution(rng):
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    for sub in Subsystem:
        twice = linalg.partial_transpose(linalg.partial_transpose(m, subsystem=sub), subsystem=sub)
        assert np.max(np.abs(twice - m)) <= 1e-14


def test_partial_transpose_max_entangled_min_eigenvalue():
    w = np.linalg.eigvalsh(linalg.partial_transpose(oracles.max_entangled()))
    assert w[0] == pytest.approx(-1 / 3, abs=1e-14)


def test_partial_trace_product_and_max_entangled(rng):
    ra, rb = oracles.random_density(rng, 3), oracles.random_density(rng, 3)
    assert np.max(np.abs(linalg.partial_trace(np.kron(ra, rb), traced="B") - ra)) < 1e-15
    assert np.max(np.abs(linalg.partial_trace(np.kron(ra, rb), traced="A") - rb)) < 1e-15
    reduced = linalg.partial_trace(oracles.max_entangled(), traced="A")
    np.testing.assert_allclose(reduced, oracles.partial_trace_loops(oracles.max_entangled(), traced="A"), atol=1e-15)
    np.testing.assert_allclose(reduced, np.eye(3) / 3, atol=1e-15)


def test_partial_trace_preserves_trace_and_positivity(rng):
    for _ in range(10):
        h = oracles.random_hermitian(rng, 9)
        for traced in Subsystem:
            assert abs(np.trace(linalg.partial_trace(h, traced=traced)) - np.trace(h)) < 1e-12
        rho = oracles.random_density(rng, 9, rank=2)
        for traced in Subsystem:
            assert np.linalg.eigvalsh(linalg.partial_trace(rho, traced=traced))[0] >= -1e-10


def test_realign_single_entry():
    m = np.zeros((9, 9), dtype=complex)
    m[5, 0] = 2 - 1j
    r = linalg.realign(m)
    assert r[3, 6] == 2 - 1j
    assert np.count_nonzero(r) == 1


def test_realign_matches_oracle_and_involution(rng):
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    r = linalg.realign(m)
    np.testing.assert_array_equal(r, oracles.realign_loops(m))
    assert np.max(np.abs(linalg.realign(r) - m)) <= 1e-14


def test_realign_unequal_dims(rng):
    dims = linalg.BipartiteDims(2, 3)
    m = rng.normal(size=(6, 6)) + 0j
    r = linalg.realign(m, dims)
    assert r.shape == (4, 9)
    np.testing.assert_array_equal(r, oracles.realign_loops(m, 2, 3))


def test_realign_trace_norm_max_entangled():
    r = oracles.realign_loops(oracles.max_entangled())
    assert np.linalg.svd(r, compute_uv=False).sum() == pytest.approx(3.0, abs=1e-12)
    assert linalg.trace_norm(linalg.realign(oracles.max_entangled())) == pytest.approx(3.0, abs=1e-12)


@pytest.mark.parametrize("fn", [linalg.partial_transpose, linalg.partial_trace, linalg.realign])
def test_bipartite_ops_check_dims(fn):
    with pytest.raises(DimensionMismatchError):
        fn(np.eye(8))


def test_as_cmat_rejects_non_finite():
    with pytest.raises(ValueError):
        linalg.as_cmat(np.array([[math.nan]]))
