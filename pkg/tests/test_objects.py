import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcompare.objects import (CompleteCqChannel, CqState, DensityMatrix, Encoding, InvalidStateError, Povm,
                              build_cq_state, build_extended_cq_state, span_dimension, standard_complete_cq)
from qcompare.sampling import indexed_rng, random_density_array, random_encoding

from conftest import KET0, KET1, MIXED, PLUS


def test_density_clamps_tiny_negative_eigenvalues():
    rho = DensityMatrix(np.diag([1 + 5e-10, -5e-10]))
    assert np.min(np.linalg.eigvalsh(rho.data)) >= 0
    assert rho.trace() == pytest.approx(1.0, abs=1e-15)


def test_density_rejections():
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.1, -0.1]))
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([0.6, 0.6]))


def test_density_constructors():
    assert np.allclose(DensityMatrix.pure([1, 1]).data, PLUS)
    assert np.allclose(DensityMatrix.maximally_mixed(3).data, np.eye(3) / 3)
    assert np.allclose(DensityMatrix.normalized(np.diag([2.0, 2.0])).data, MIXED)


def test_povm_validation():
    Povm((KET0, KET1))
    with pytest.raises(ValueError):
        Povm((KET0, KET0))
    with pytest.raises(ValueError):
        Povm((np.diag([1.5, 0.0]), np.diag([-0.5, 1.0])))


def test_encoding_validation_and_mapping():
    with pytest.raises(ValueError):
        Encoding(np.array([[0.5, 0.5], [0.1, 0.0]]))
    with pytest.raises(ValueError):
        Encoding(np.array([[1.2, -0.2]]))
    enc = Encoding.from_mapping({("a", 0): 0.25, ("a", 1): 0.25, ("b", 0): 0.5})
    assert enc.labels_u == ("a", "b") and enc.labels_x == (0, 1)
    assert enc.as_mapping()[("b", 1)] == 0.0
    assert np.allclose(enc.marginal_u(), [0.5, 0.5])


def test_cq_state_orthogonal_pair():
    enc = Encoding.from_mapping({("a", 0): 0.5, ("b", 1): 0.5})
    cq = build_cq_state(enc, (KET0, KET1))
    assert np.allclose(cq.weights, [0.5, 0.5])
    assert np.allclose(cq.states, [KET0, KET1])


def test_cq_state_drops_zero_labels():
    enc = Encoding.from_mapping({("a", 0): 1.0, ("b", 1): 0.0})
    cq = build_cq_state(enc, (PLUS, KET1))
    assert cq.labels == ("a",) and np.allclose(cq.weights, [1.0])
    assert np.allclose(cq.states[0], PLUS)


def test_cq_state_mixed_conditionals():
    enc = Encoding.from_mapping({("a", 0): 0.25, ("a", 1): 0.25, ("b", 0): 0.5})
    cq = build_cq_state(enc, (PLUS, KET1))
    assert np.allclose(cq.weights, [0.5, 0.5])
    assert np.allclose(cq.states[0], (PLUS + KET1) / 2)
    assert np.allclose(cq.states[1], PLUS)


def test_cq_state_dimension_mismatch():
    enc = Encoding(np.array([[0.5, 0.5]]))
    with pytest.raises(ValueError):
        build_cq_state(enc, (KET0, np.eye(3) / 3))
    with pytest.raises(ValueError):
        CqState(np.array([0.5, 0.6]), np.array([KET0, KET1]))


def test_extended_product_form():
    cq = standard_complete_cq(2)
    q = np.array([0.1, 0.2, 0.3, 0.4])
    r = np.array([[0.9, 0.1], [0.3, 0.7]])
    pu = np.array([0.4, 0.6])
    probs = pu[:, None, None] * q[None, :, None] * r[:, None, :]
    ext = build_extended_cq_state(Encoding(probs), cq, (KET0, PLUS))
    tau = np.einsum("y,yab->ab", q, cq.stack())
    for u in range(2):
        rho_u = r[u, 0] * KET0 + r[u, 1] * PLUS
        assert np.allclose(ext.states[u], np.kron(tau, rho_u), atol=1e-12)


def test_extended_single_label_and_mismatch():
    cq = standard_complete_cq(2)
    probs = np.full((1, 4, 2), 1 / 8)
    ext = build_extended_cq_state(Encoding(probs), cq, (KET0, KET1))
    assert ext.size == 1 and ext.weights[0] == 1.0
    with pytest.raises(ValueError):
        build_extended_cq_state(Encoding(np.full((1, 3, 2), 1 / 6)), cq, (KET0, KET1))
    with pytest.raises(ValueError):
        build_extended_cq_state(Encoding(np.array([[0.5, 0.5]])), cq, (KET0, KET1))


def test_span_examples():
    assert span_dimension([MIXED]) == 1
    assert span_dimension([KET0, KET1]) == 2
    assert standard_complete_cq(1).stack().tolist() == [[[1.0]]]
    # ranks frozen from an independent Gram singular-value count
    assert span_dimension(standard_complete_cq(2).states) == 4
    assert span_dimension(standard_complete_cq(3).states) == 9


@pytest.mark.parametrize("d", range(1, 7))
def test_standard_complete_cq_spans(d):
    cq = standard_complete_cq(d)
    assert len(cq.states) == d * d
    assert span_dimension(cq.states) == d * d


def test_incomplete_channel_rejected():
    with pytest.raises(ValueError):
        CompleteCqChannel((DensityMatrix(KET0), DensityMatrix(KET1), DensityMatrix(PLUS), DensityMatrix(MIXED)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 5), st.integers(1, 4), st.booleans())
def test_assembly_yields_valid_cq_states(seed, u_size, d, with_y):
    rng = indexed_rng(seed, 0)
    pair = (random_density_array(d, rng), random_density_array(d, rng, rank=1))
    if with_y:
        cq_ch = standard_complete_cq(2)
        cq = build_extended_cq_state(random_encoding(u_size, rng, y_size=4), cq_ch, pair)
    else:
        cq = build_cq_state(random_encoding(u_size, rng), pair)
    assert abs(cq.weights.sum() - 1) <= 1e-12
    for s in cq.states:
        DensityMatrix(s)
