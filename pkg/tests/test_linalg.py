import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_density, random_hermitian, random_unitary
from wernerqd.errors import CapacityError, ConvergenceError, DimensionError, ValidationError
from wernerqd.linalg import (
    MAX_DENSE_DIM,
    BlockedB,
    check_dim,
    eig_hermitian,
    eigvals_hermitian,
    hermitian_defect,
    jacobi_tolerance,
    kron,
    partial_trace_a,
    partial_trace_b,
    partial_transpose_b,
    project_b,
    sandwich_b,
    trace_norm,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]])
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)


# kron ----------------------------------------------------------------------


def test_kron_matches_numpy(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(2, 2))
    np.testing.assert_allclose(kron(a, b), np.kron(a, b), atol=0)


def test_kron_index_convention():
    # Row index is i * dim_b + k: |1> (x) |0> sits at position 2.
    e1 = np.diag([0.0, 1.0])
    e0 = np.diag([1.0, 0.0])
    out = kron(e1, e0)
    assert out[2, 2] == 1 and np.count_nonzero(out) == 1


def test_kron_capacity():
    with pytest.raises(CapacityError):
        kron(np.eye(128), np.eye(64))


def test_check_dim_at_cap_is_fine():
    check_dim(MAX_DENSE_DIM)
    with pytest.raises(CapacityError):
        check_dim(MAX_DENSE_DIM + 1)


def test_non_square_rejected():
    with pytest.raises(DimensionError):
        kron(np.ones((2, 3)), np.eye(2))


# partial operations --------------------------------------------------------


def test_partial_traces_of_product(rng):
    a = random_density(rng, 4)
    b = random_density(rng, 2)
    rho = kron(a, b)
    np.testing.assert_allclose(partial_trace_b(rho, 4, 2), a, atol=1e-15)
    np.testing.assert_allclose(partial_trace_a(rho, 4, 2), b, atol=1e-15)


def test_partial_trace_bell_state():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    rho = np.outer(psi, psi)
    np.testing.assert_allclose(partial_trace_b(rho, 2, 2), np.eye(2) / 2, atol=1e-16)
    np.testing.assert_allclose(partial_trace_a(rho, 2, 2), np.eye(2) / 2, atol=1e-16)


def test_partial_trace_rejects_bad_factorization(rng):
    with pytest.raises(DimensionError):
        partial_trace_b(random_density(rng, 6), 4, 2)


def test_partial_trace_rejects_non_hermitian():
    m = np.array([[0.5, 1.0], [0.0, 0.5]])
    with pytest.raises(ValidationError):
        partial_trace_b(kron(m, np.eye(2) / 2), 2, 2)


def test_partial_transpose_bell_has_negative_eigenvalue():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    pt = partial_transpose_b(np.outer(psi, psi), 2, 2)
    # The partial transpose of a Bell projector is half the swap operator.
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]) / 2
    np.testing.assert_allclose(pt, swap, atol=1e-16)
    np.testing.assert_allclose(eigvals_hermitian(pt), [0.5, 0.5, 0.5, -0.5], atol=1e-15)
    assert trace_norm(pt) == pytest.approx(2.0, abs=1e-14)


def test_partial_transpose_of_product_transposes_b_only(rng):
    a = random_density(rng, 2)
    b = random_density(rng, 2)
    np.testing.assert_allclose(partial_transpose_b(kron(a, b), 2, 2), kron(a, b.T), atol=1e-16)


@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 2), (4, 2), (3, 2), (2, 3)]))
def test_partial_transpose_is_involution_and_preserves_trace(seed, dims):
    rng = np.random.default_rng(seed)
    da, db = dims
    rho = random_density(rng, da * db)
    pt = partial_transpose_b(rho, da, db)
    np.testing.assert_allclose(partial_transpose_b(pt, da, db), rho, atol=0)
    assert np.trace(pt).real == pytest.approx(1.0, abs=1e-14)
    assert hermitian_defect(pt) < 1e-15


@given(st.integers(0, 2**32 - 1))
def test_partial_traces_agree_on_total_trace(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 8)
    assert np.trace(partial_trace_b(rho, 4, 2)).real == pytest.approx(1.0, abs=1e-14)
    assert np.trace(partial_trace_a(rho, 4, 2)).real == pytest.approx(1.0, abs=1e-14)


def test_sandwich_matches_explicit_product(rng):
    rho = random_density(rng, 8)
    op = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    big = kron(np.eye(4), op)
    np.testing.assert_allclose(sandwich_b(rho, op, 4), big @ rho @ big.conj().T, atol=1e-14)


def test_project_b_equals_trace_of_projected_state(rng):
    rho = random_density(rng, 8)
    u = np.array([math.cos(0.3), complex(math.cos(1.2), math.sin(1.2)) * math.sin(0.3)])
    proj = kron(np.eye(4), np.outer(u, u.conj()))
    ref = partial_trace_b(proj @ rho @ proj, 4, 2)
    np.testing.assert_allclose(project_b(rho, u, 4), ref, atol=1e-15)
    blocked = BlockedB(rho, 4, 2)
    np.testing.assert_allclose(project_b(blocked, u, 4), ref, atol=1e-15)


def test_blocked_rejects_wrong_ket(rng):
    with pytest.raises(DimensionError):
        BlockedB(random_density(rng, 8), 4, 2).project(np.ones(3))


# Jacobi eigensolver --------------------------------------------------------


def test_pauli_spectra():
    for m in (PAULI_X, PAULI_Y, PAULI_Z):
        np.testing.assert_allclose(eigvals_hermitian(m), [1.0, -1.0], atol=1e-15)


def test_known_complex_matrix():
    # Eigenvalues of [[2, 1-1j], [1+1j, 3]] are (5 +- sqrt(9)) / 2.
    m = np.array([[2, 1 - 1j], [1 + 1j, 3]])
    np.testing.assert_allclose(eigvals_hermitian(m), [4.0, 1.0], atol=1e-14)


def test_diagonal_input_needs_no_rotation():
    s = eig_hermitian(np.diag([0.1, 3.0, -2.0, 0.5]))
    assert s.rotations == 0 and s.sweeps == 0
    np.testing.assert_array_equal(s.eigenvalues, [3.0, 0.5, 0.1, -2.0])
    assert s.max == 3.0 and s.min == -2.0


def test_one_by_one():
    assert eig_hermitian(np.array([[0.25]])).eigenvalues.tolist() == [0.25]


@pytest.mark.parametrize("dim", [2, 3, 5, 8, 17, 32])
def test_against_numpy_oracle(rng, dim):
    h = random_hermitian(rng, dim)
    s = eig_hermitian(h, vectors=True)
    np.testing.assert_allclose(s.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-12)
    recon = s.vectors @ np.diag(s.eigenvalues) @ s.vectors.conj().T
    np.testing.assert_allclose(recon, h, atol=1e-12)
    np.testing.assert_allclose(s.vectors.conj().T @ s.vectors, np.eye(dim), atol=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_unitary_invariance_and_trace(seed, dim):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, dim)
    u = random_unitary(rng, dim)
    e1 = eigvals_hermitian(h)
    e2 = eigvals_hermitian(u @ h @ u.conj().T, validate=False)
    np.testing.assert_allclose(e1, e2, atol=1e-11)
    assert e1.sum() == pytest.approx(np.trace(h).real, abs=1e-11)
    assert np.all(np.diff(e1) <= 0)


@given(st.integers(0, 2**32 - 1), st.integers(2, 10))
def test_degenerate_spectrum(seed, dim):
    rng = np.random.default_rng(seed)
    u = random_unitary(rng, dim)
    target = np.array([1.0] * (dim // 2) + [-0.5] * (dim - dim // 2))
    h = u @ np.diag(target) @ u.conj().T
    np.testing.assert_allclose(np.sort(eigvals_hermitian(h, validate=False)), np.sort(target), atol=1e-12)


def test_input_not_modified(rng):
    h = random_hermitian(rng, 6)
    keep = h.copy()
    eig_hermitian(h)
    np.testing.assert_array_equal(h, keep)


def test_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        eig_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_convergence_error_when_out_of_sweeps(rng):
    with pytest.raises(ConvergenceError) as info:
        eig_hermitian(random_hermitian(rng, 12), max_sweeps=1)
    assert info.value.off_norm > 1e-12


def test_tolerance_context_is_scoped(rng):
    h = random_hermitian(rng, 6, scale=1e-3)
    with jacobi_tolerance(1.0):
        loose = eig_hermitian(h)
    assert loose.rotations == 0
    tight = eig_hermitian(h)
    np.testing.assert_allclose(tight.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-14)


def test_trace_norm_of_density_is_one(rng):
    assert trace_norm(random_density(rng, 8)) == pytest.approx(1.0, abs=1e-13)
