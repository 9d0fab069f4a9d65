import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcompare import linalg
from qcompare.linalg import (EigenConvergenceError, HermitianMatrix, NotHermitianError, eig_hermitian,
                             hermitian_basis, partial_trace, tensor, trace_norm)

from conftest import KET0, PLUS, random_hermitian

SQRT2 = 1.4142135623730951  # closed-form eigenvalues +-1/sqrt(2), checked by the oracle eigensolver


def test_pauli_x_eigenvalues():
    w, v = eig_hermitian([[0, 1], [1, 0]])
    assert np.allclose(w, [1, -1], atol=1e-12)
    assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


def test_identity_eigenvalues():
    w, _ = eig_hermitian(np.eye(3))
    assert np.allclose(w, [1, 1, 1])


def test_diagonal_keeps_standard_basis():
    w, v = eig_hermitian(np.diag([0.7, 0.3]))
    assert np.allclose(w, [0.7, 0.3])
    assert np.allclose(np.abs(v), np.eye(2))


def test_one_by_one():
    w, v = eig_hermitian([[2.5]])
    assert w.tolist() == [2.5] and v.shape == (1, 1)


def test_trace_norm_examples():
    assert trace_norm(np.diag([1.0, -2.0])) == pytest.approx(3.0, abs=1e-14)
    assert trace_norm(PLUS) == pytest.approx(1.0, abs=1e-14)
    assert trace_norm(KET0 - PLUS) == pytest.approx(SQRT2, abs=1e-14)


def test_hermiticity_is_enforced():
    m = HermitianMatrix([[1, 1 + 1e-12], [1, 0]])
    assert np.array_equal(m.data, m.data.conj().T)
    with pytest.raises(NotHermitianError):
        HermitianMatrix([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        HermitianMatrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        HermitianMatrix(np.zeros((0, 0)))


def test_matrix_is_immutable():
    m = HermitianMatrix(np.eye(2))
    with pytest.raises(ValueError):
        m.data[0, 0] = 5


def test_arithmetic_stays_hermitian():
    a = HermitianMatrix(np.diag([1.0, 2.0]))
    b = HermitianMatrix(PLUS)
    assert isinstance(a - b, HermitianMatrix)
    assert np.allclose((2 * a).data, np.diag([2.0, 4.0]))
    assert np.allclose((-a + a).data, 0)


def test_tensor_examples():
    assert np.allclose(tensor(np.eye(2), np.eye(2)).data, np.eye(4))
    assert np.allclose(tensor(np.diag([1, 0]), np.diag([0, 1])).data, np.diag([0, 1, 0, 0]))


def test_partial_trace_examples():
    rho = np.diag([0.25, 0.75])
    sigma = np.diag([0.1, 0.2, 0.7])
    assert np.allclose(partial_trace(np.kron(rho, sigma), (2, 3), "first").data, rho)
    assert np.allclose(partial_trace(np.kron(rho, sigma), (2, 3), "second").data, sigma)
    omega = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(partial_trace(np.outer(omega, omega), (2, 2)).data, np.eye(2) / 2)


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(ValueError):
        partial_trace(np.eye(6), (2, 2))
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 2), keep="both")


def test_iteration_cap_reports_residual(monkeypatch):
    monkeypatch.setattr(linalg, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(EigenConvergenceError) as info:
        eig_hermitian([[1, 2], [2, 1]])
    assert info.value.residual > 0 and info.value.sweeps == 0


def test_hermitian_basis_is_orthonormal():
    for d in (1, 2, 3, 4):
        b = hermitian_basis(d)
        gram = np.einsum("iab,jba->ij", b, b)
        assert np.allclose(gram, np.eye(d * d), atol=1e-14)
        assert np.allclose(b, np.conj(np.swapaxes(b, 1, 2)))


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 16))
def test_eig_reconstructs(seed, d):
    m = random_hermitian(d, np.random.default_rng(seed))
    w, v = eig_hermitian(m)
    assert np.max(np.abs(m - (v * w) @ v.conj().T)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10
    assert np.all(np.diff(w) <= 0)
    assert np.allclose(w, np.linalg.eigvalsh(m)[::-1], atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8), st.sampled_from(["indefinite", "psd", "nsd"]))
def test_trace_norm_dominates_trace(seed, d, kind):
    m = random_hermitian(d, np.random.default_rng(seed))
    if kind == "psd":
        m = m @ m
    elif kind == "nsd":
        m = -(m @ m)
    tn, tr = trace_norm(m), abs(np.trace(m).real)
    assert tn >= tr - 1e-12
    w = np.linalg.eigvalsh(m)
    definite = np.all(w >= -1e-12) or np.all(w <= 1e-12)
    assert definite == (abs(tn - tr) <= 1e-10 * max(1.0, tn))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_partial_trace_of_product(seed, da, db):
    rng = np.random.default_rng(seed)
    a, b = random_hermitian(da, rng), random_hermitian(db, rng)
    assert np.allclose(partial_trace(np.kron(a, b), (da, db)).data, a * np.trace(b).real, atol=1e-12)
    assert np.trace(np.kron(a, b)).real == pytest.approx(np.trace(a).real * np.trace(b).real, abs=1e-12)
    m = random_hermitian(da * db, rng)
    assert np.trace(partial_trace(m, (da, db)).data).real == pytest.approx(np.trace(m).real, abs=1e-12)
