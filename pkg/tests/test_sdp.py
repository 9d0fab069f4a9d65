import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcompare.comparison import guessing_problem
from qcompare.objects import CqState
from qcompare.policy import NumericPolicy
from qcompare.sampling import indexed_rng, random_density_array
from qcompare.sdp import SdpProblem, SdpStatus, check_certificate, recording, solve


def scalar_problem():
    return SdpProblem.from_constraints((1,), [[[1.0]]], [([[[1.0]]], 3.0)])


def projector_problem():
    # max tr(rho P) with P >= 0 and I - P = Q >= 0, written as P + Q = I
    from qcompare.linalg import hermitian_basis
    basis = hermitian_basis(2)
    cons = [((b, b), np.trace(b).real) for b in basis]
    return SdpProblem.from_constraints((2, 2), (np.diag([0.7, 0.3]), None), cons, "maximize")


def negative_trace_problem():
    return SdpProblem.from_constraints((2,), None, [((np.eye(2),), -1.0)])


def test_scalar_equality():
    sol = solve(scalar_problem())
    assert sol.status is SdpStatus.OPTIMAL
    assert sol.X[0][0, 0].real == pytest.approx(3.0, abs=1e-7)
    assert check_certificate(scalar_problem(), sol)


def test_projector_optimum_is_identity():
    p = projector_problem()
    sol = solve(p)
    assert sol.optimal
    assert sol.primal_objective == pytest.approx(1.0, abs=1e-7)
    assert np.allclose(sol.X[0], np.eye(2), atol=1e-6)
    assert check_certificate(p, sol)


def test_negative_trace_is_infeasible():
    p = negative_trace_problem()
    sol = solve(p)
    assert sol.status is SdpStatus.INFEASIBLE
    assert sol.certificate is not None and sol.margin > 0
    assert np.linalg.norm(sol.certificate) == pytest.approx(1.0)
    assert check_certificate(p, sol)


def test_infeasible_through_interior_point_path():
    # X >= 0, X_00 = 1, X_11 = 1, X_01 + X_10 = 3: violates |X_01| <= 1
    e00, e11 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    off = np.array([[0.0, 1.0], [1.0, 0.0]])
    p = SdpProblem.from_constraints((2,), None, [((e00,), 1.0), ((e11,), 1.0), ((off,), 3.0)])
    sol = solve(p)
    assert sol.status is SdpStatus.INFEASIBLE
    assert check_certificate(p, sol)


def test_perturbed_solution_fails_check():
    p = projector_problem()
    sol = solve(p)
    w, v = np.linalg.eigh(sol.X[0])
    w[0] -= 0.1
    bad = dataclasses.replace(sol, X=((v * w) @ v.conj().T, sol.X[1]))
    assert not check_certificate(p, bad)


def test_flipped_certificate_fails_check():
    p = negative_trace_problem()
    sol = solve(p)
    flipped = dataclasses.replace(sol, certificate=-sol.certificate)
    assert not check_certificate(p, flipped)


def test_recording_collects_solves():
    with recording() as log:
        solve(scalar_problem())
        with recording() as inner:
            solve(negative_trace_problem())
    assert [s.status for _, s in log] == [SdpStatus.OPTIMAL, SdpStatus.INFEASIBLE]
    assert len(inner) == 1


def test_complex_data():
    rho = np.array([[0.5, 0.25j], [-0.25j, 0.5]])
    cq = CqState(np.array([0.5, 0.5]), np.array([rho, rho.conj()]))
    p = guessing_problem(cq)
    sol = solve(p)
    assert sol.optimal and check_certificate(p, sol)
    assert sol.primal_objective == pytest.approx(0.75, abs=1e-7)


def test_policy_from_env():
    pol = NumericPolicy.from_env({"QCOMPARE_SOLVER_TOL": "1e-7", "QCOMPARE_MAX_ITER": "50"})
    assert pol.solver_tol == 1e-7 and pol.max_iter == 50 and pol.verdict_margin == 1e-6
    assert pol.borderline_band == pytest.approx(1e-6)
    with pytest.raises(ValueError):
        NumericPolicy.from_env({"QCOMPARE_VERDICT_MARGIN": "-1"})
    with pytest.raises(ValueError):
        NumericPolicy.from_env({"QCOMPARE_SOLVER_TOL": "tight"})


def test_iteration_cap_gives_error_or_borderline():
    sol = solve(projector_problem(), NumericPolicy(max_iter=2))
    assert sol.status in (SdpStatus.ERROR, SdpStatus.BORDERLINE)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.integers(2, 4), st.integers(2, 4))
def test_weak_duality_and_determinism(seed, d, k):
    rng = indexed_rng(seed, 0)
    w = rng.dirichlet(np.ones(k))
    cq = CqState(w, np.array([random_density_array(d, rng) for _ in range(k)]))
    p = guessing_problem(cq)
    a, b = solve(p), solve(p)
    assert a.optimal and check_certificate(p, a)
    # maximization: primal <= dual
    assert a.primal_objective <= a.dual_objective + 1e-7
    assert a.primal_objective == b.primal_objective
    assert all(np.array_equal(x, y) for x, y in zip(a.X, b.X))
