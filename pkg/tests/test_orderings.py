import numpy as np
import pytest

from qcompare.comparison import ChoiMatrix, Verdict, apply_choi, channel_feasibility
from qcompare.linalg import trace_norm
from qcompare.objects import build_cq_state
from qcompare.orderings import (REGIME_GENERAL, REGIME_QUBIT, REGIME_SEMIQUANTUM, commutator_norm,
                                decide_pair_ordering, decide_thermal_ordering, sample_ordering_check)
from qcompare.sampling import indexed_rng, random_choi_array, random_density_array, random_encoding

from conftest import KET0, KET1, MIXED, PLUS, random_pair


def test_commutator_examples():
    assert commutator_norm(np.diag([0.2, 0.8]), np.diag([0.6, 0.4])) == 0
    assert commutator_norm(KET0, PLUS) == pytest.approx(0.5)
    rho = random_density_array(3, indexed_rng(1, 0))
    assert commutator_norm(rho, rho) <= 1e-15


def test_pair_ordering_examples():
    v = decide_pair_ordering((KET0, KET1), (MIXED, MIXED))
    assert v.relation is Verdict.HOLDS and v.regime == REGIME_QUBIT
    pair = random_pair(2, indexed_rng(2, 0))
    assert decide_pair_ordering(pair, pair).relation is Verdict.HOLDS
    v = decide_pair_ordering((MIXED, MIXED), (KET0, KET1))
    assert v.relation is Verdict.FAILS
    assert v.witness.witness_found and v.witness.gap == pytest.approx(0.5, abs=1e-7)


def test_regime_dispatch():
    rng = indexed_rng(3, 0)
    rho = random_pair(3, rng)
    commuting = (np.diag([0.5, 0.3, 0.2]), np.diag([0.1, 0.1, 0.8]))
    v = decide_pair_ordering(rho, commuting, witness=False)
    assert v.regime == REGIME_SEMIQUANTUM and v.ordering == "info"
    v = decide_pair_ordering(rho, random_pair(3, rng), witness=False)
    assert v.regime == REGIME_GENERAL and v.ordering == "complete"
    assert any("not decided" in n for n in v.notes)


@pytest.mark.parametrize("d", [2, 3])
def test_reflexive(d):
    for i in range(4):
        pair = random_pair(d, indexed_rng(4, i, d))
        assert decide_pair_ordering(pair, pair).relation is Verdict.HOLDS


@pytest.mark.parametrize("d", [2, 3])
def test_thermal_mixing_holds(d):
    rng = indexed_rng(5, 0, d)
    rho, omega = random_density_array(d, rng), random_density_array(d, rng)
    for lam in (0.0, 0.25, 0.5, 1.0):
        sigma = (1 - lam) * rho + lam * omega
        v = decide_thermal_ordering(rho, sigma, omega)
        assert v.relation is Verdict.HOLDS
        assert trace_norm(apply_choi(v.choi, omega).data - omega) <= 1e-7
        assert trace_norm(apply_choi(v.choi, rho).data - sigma) <= 1e-7


def test_thermal_fixed_point_fails():
    for i in range(5):
        rng = indexed_rng(6, i)
        omega, sigma = random_density_array(2, rng), random_density_array(2, rng)
        assert decide_thermal_ordering(omega, sigma, omega).relation is Verdict.FAILS


def test_thermal_with_separate_output_state():
    rng = indexed_rng(7, 0)
    rho, omega = random_density_array(3, rng), random_density_array(3, rng)
    omega_out = random_density_array(2, rng)
    v = decide_thermal_ordering(rho, omega_out, omega, omega_out=omega_out)
    assert v.relation is Verdict.HOLDS
    with pytest.raises(ValueError):
        decide_thermal_ordering(rho, omega_out, omega)


def test_transitivity_by_composition():
    rng = indexed_rng(8, 0)
    a = random_pair(3, rng)
    j1 = ChoiMatrix(random_choi_array(3, 2, rng), 3, 2)
    b = tuple(apply_choi(j1, x) for x in a)
    j2 = ChoiMatrix(random_choi_array(2, 2, rng), 2, 2)
    c = tuple(apply_choi(j2, x) for x in b)
    ab = channel_feasibility(*a, *b)
    bc = channel_feasibility(*b, *c)
    assert ab.verdict is Verdict.FEASIBLE and bc.verdict is Verdict.FEASIBLE
    composed = ab.choi.compose(bc.choi)
    for x, z in zip(a, c):
        assert trace_norm(apply_choi(composed, x).data - z) <= 2e-7


def test_sample_feasible_instance_has_no_violation():
    rng = indexed_rng(9, 0)
    rho = random_pair(2, rng)
    choi = ChoiMatrix(random_choi_array(2, 2, rng), 2, 2)
    sigma = tuple(apply_choi(choi, x) for x in rho)
    for use_r in (False, True):
        rep = sample_ordering_check(rho, sigma, 15, 3, use_r=use_r, seed=1)
        assert rep.max_violation <= 1e-7


def test_sample_orthogonal_targets():
    rep = sample_ordering_check((MIXED, MIXED), (KET0, KET1), 50, 2, seed=3)
    # brute force: orthogonal targets reveal x, so that side guesses
    # sum_x max_u p(u,x); identical sources leave only max_u p(u)
    expected = []
    for i in range(50):
        p = random_encoding(2, indexed_rng(3, i, stream=1)).probs
        expected.append(p.max(axis=0).sum() - p.sum(axis=1).max())
    assert rep.max_violation == pytest.approx(max(expected), abs=1e-7)
    assert 0.2 < rep.max_violation <= 0.5
    assert rep.max_violation_bits > 0
    assert np.allclose(rep.violations, expected, atol=1e-7)


def test_sample_supremum_at_uniform_encoding():
    from qcompare.comparison import guessing_gap, binary_encoding_from_t
    gap, _, _ = guessing_gap((MIXED, MIXED), (KET0, KET1), binary_encoding_from_t(1.0))
    assert gap == pytest.approx(0.5, abs=1e-8)


def test_sample_empty_and_deterministic():
    rep = sample_ordering_check((KET0, KET1), (MIXED, MIXED), 0, 2, seed=0)
    assert rep.n == 0 and rep.max_violation is None and rep.worst_encoding is None
    a = sample_ordering_check((KET0, PLUS), (MIXED, KET0), 8, 3, seed=5)
    b = sample_ordering_check((KET0, PLUS), (MIXED, KET0), 8, 3, seed=5)
    assert a.as_dict() == b.as_dict()
    # sample i does not depend on how many samples are drawn
    c = sample_ordering_check((KET0, PLUS), (MIXED, KET0), 4, 3, seed=5)
    assert c.violations == a.violations[:4]
