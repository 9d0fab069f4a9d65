import numpy as np
import pytest

from qcompare.comparison import ChoiMatrix, Verdict, channel_feasibility, guessing_probability
from qcompare.linalg import trace_norm
from qcompare.objects import CqState, Encoding, build_cq_state
from qcompare.oracle import (fibonacci_hemisphere, oracle_eigenvalues, oracle_feasibility_qubit,
                             oracle_pguess_qubit, oracle_trace_norm)
from qcompare.sampling import indexed_rng, random_choi_array, random_density_array

from conftest import KET0, KET1, MIXED, PLUS, random_hermitian, random_pair

UNIFORM = Encoding(np.array([[0.5, 0.0], [0.0, 0.5]]))


def test_directions_are_unit_and_upper():
    dirs = fibonacci_hemisphere(257)
    assert np.allclose(np.linalg.norm(dirs, axis=1), 1)
    assert np.all(dirs[:, 2] > 0)


def test_pguess_oracle_examples():
    assert oracle_pguess_qubit(build_cq_state(UNIFORM, (KET0, KET1)), 64) == pytest.approx(1.0, abs=1e-3)
    rho = random_density_array(2, indexed_rng(1, 0))
    state = CqState(np.array([0.3, 0.7]), np.array([rho, rho]))
    assert oracle_pguess_qubit(state, 64) == 0.7
    assert oracle_pguess_qubit(build_cq_state(UNIFORM, (KET0, PLUS)), 4096) == pytest.approx(0.853553, abs=1e-4)


def test_pguess_oracle_is_a_lower_bound():
    for i in range(20):
        rng = indexed_rng(2, i)
        w = rng.dirichlet([1, 1])
        state = CqState(w, np.array(random_pair(2, rng)))
        sdp = guessing_probability(state)[0]
        orc = oracle_pguess_qubit(state, 4096)
        assert orc <= sdp + 1e-9
        assert sdp - orc <= 1e-3


def test_trace_norm_oracle_examples():
    assert oracle_trace_norm(np.diag([1.0, -2.0])) == pytest.approx(3.0)
    assert oracle_trace_norm(random_density_array(3, indexed_rng(3, 0))) == pytest.approx(1.0)
    assert oracle_trace_norm([[4.0]]) == 4.0
    with pytest.raises(ValueError):
        oracle_trace_norm(np.eye(9))


@pytest.mark.parametrize("d", range(1, 9))
def test_trace_norm_oracle_matches_primary(d):
    rng = indexed_rng(4, d)
    for _ in range(5):
        m = random_hermitian(d, rng)
        assert abs(oracle_trace_norm(m) - trace_norm(m)) <= 1e-6
    # repeated eigenvalues
    m = np.diag([1.0, 1.0, -2.0, 3.0, 3.0, 0.0, 0.5, -0.5][:d])
    assert abs(oracle_trace_norm(m) - trace_norm(m)) <= 1e-6
    assert np.allclose(oracle_eigenvalues(m), np.sort(np.diag(m))[::-1], atol=1e-8)


def test_feasibility_oracle_examples():
    rng = indexed_rng(5, 0)
    rho = random_pair(2, rng)
    choi = ChoiMatrix(random_choi_array(2, 2, rng), 2, 2)
    sigma = [choi.apply_array(x) for x in rho]
    assert oracle_feasibility_qubit(rho, sigma, seed=1).found
    assert oracle_feasibility_qubit((KET0, PLUS), (KET0, PLUS), seed=1).found
    res = oracle_feasibility_qubit((MIXED, MIXED), (KET0, KET1), n_params=3, seed=1)
    assert not res.found and res.residual >= 1.0


def test_feasibility_oracle_respects_certified_infeasibility():
    for i in range(6):
        rng = indexed_rng(6, i)
        quad = random_pair(2, rng) + random_pair(2, rng)
        v = channel_feasibility(*quad)
        if v.verdict is Verdict.INFEASIBLE and v.margin > 1e-5:
            assert not oracle_feasibility_qubit(quad[:2], quad[2:], n_params=2, seed=i).found
