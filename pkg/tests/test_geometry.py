import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaconverse.bounds import psi_mds
from metaconverse.channel import Channel, ErasureErrorParams, OutputDistribution, bec, qstar_erasure, bsc, product_channel, uniform_output
from metaconverse.codes import Codebook
from metaconverse.geometry import classify_jscc, classify_qp, radii, scaled_measure, sphere, spectrum
from metaconverse.numeric import INF, HypothesisViolation

eps = F(1, 4)


def block(n, e=eps):
    ch = product_channel(bsc(e), n)
    return ch, uniform_output(ch)


def test_sphere_kinds_partition_outputs():
    ch, Q = block(3)
    x = (0, 0, 0)
    tau = F(27, 64) * 8  # ratio of the transmitted word itself
    assert sphere(x, tau, ch, Q, "closed") == {(0, 0, 0)}
    assert sphere(x, tau, ch, Q, "interior") == set()
    assert sphere(x, tau, ch, Q, "shell") == {(0, 0, 0)}
    assert len(sphere(x, F(0), ch, Q)) == 8
    with pytest.raises(ValueError):
        sphere(x, tau, ch, Q, "open")


def test_spectrum_frozen_values():
    ch, Q = block(2)
    sp = spectrum(ch, Q, (0, 0))
    assert sp.levels == (F(9, 4), F(3, 4), F(1, 4))
    assert sp.q_mass == (F(1, 4), F(1, 2), F(1, 4))
    assert sp.w_mass == (F(9, 16), F(3, 8), F(1, 16))
    assert sp.Q(F(3, 4)) == F(3, 4) and sp.Q_interior(F(3, 4)) == F(1, 4) and sp.Q_shell(F(3, 4)) == F(1, 2)


def test_hamming_code_perfect_radii():
    G = [(1, 0, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 0, 1), (0, 0, 1, 0, 0, 1, 1), (0, 0, 0, 1, 1, 1, 1)]
    code = Codebook([tuple(sum(m[i] * G[i][j] for i in range(4)) % 2 for j in range(7))
                     for m in itertools.product((0, 1), repeat=4)], 2)
    ch, Q = block(7)
    cls = classify_qp(code, ch, Q)
    # eta: distance-1 ratio 128 (3/4)^6 (1/4); nu: distance-2 ratio
    assert cls.verdict == "perfect"
    assert cls.radii.eta == 128 * F(3, 4) ** 6 * F(1, 4)
    assert cls.radii.nu == 128 * F(3, 4) ** 5 * F(1, 4) ** 2


def test_neither_code():
    ch, Q = block(3)
    cls = classify_qp(Codebook([(0, 0, 0), (0, 0, 1)], 2), ch, Q)
    assert cls.verdict == "neither" and not cls.quasi_perfect and cls.witness_gamma is None


def test_parity_code_on_bec_depends_on_the_auxiliary_law():
    p = ErasureErrorParams(2, F(0), F(1, 4))
    ch = product_channel(bec(F(1, 4)), 3)
    code = Codebook([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)], 2)
    # uniform Q charges unerased non-codewords, which no sphere can cover
    assert radii(code, ch, uniform_output(ch)).eta == 0
    Q, _ = qstar_erasure(3, p, psi_mds(3, 2, 4))
    cls = classify_qp(code, ch, Q)
    assert cls.verdict == "quasi-perfect" and cls.radii.eta == cls.radii.nu == F(19, 64)


def test_preconditions_enforced():
    ch = Channel.from_rows([[F(1, 2), F(1, 2)], [F(1, 3), F(2, 3)]])
    with pytest.raises(HypothesisViolation):
        classify_qp(Codebook([(0,), (1,)], 2), ch, uniform_output(ch))
    sym = bsc(eps)
    with pytest.raises(HypothesisViolation):
        classify_qp(Codebook([(0,), (1,)], 2), sym, OutputDistribution.from_probs([F(1, 3), F(2, 3)]))


def test_single_codeword_is_perfect():
    ch, Q = block(2)
    assert classify_qp(Codebook([(0, 1)], 2), ch, Q).verdict == "perfect"


def test_jscc_classifier_noiseless():
    ch = Channel.from_rows([[F(1), F(0)], [F(0), F(1)]])
    cls = classify_jscc([(0,), (1,), (1,)], [F(1, 2), F(3, 10), F(1, 5)], ch, uniform_output(ch))
    assert cls.quasi_perfect


@st.composite
def small_code(draw):
    n = draw(st.integers(1, 4))
    M = draw(st.integers(1, min(4, 2 ** n)))
    words = draw(st.lists(st.tuples(*[st.integers(0, 1)] * n), min_size=M, max_size=M, unique=True))
    return Codebook(words, 2)


@given(small_code(), st.sampled_from([F(1, 10), F(1, 4), F(2, 5)]))
def test_spectrum_identity_and_normalization(code, e):
    ch, Q = block(code.n, e)
    sp = spectrum(ch, Q, code.words[0])
    assert sum(sp.w_mass) == 1 and sum(sp.q_mass) == 1
    for lv, qm, wm in zip(sp.levels, sp.q_mass, sp.w_mass):
        if lv != INF:
            assert wm == lv * qm


@given(small_code(), st.sampled_from([F(2), F(1, 3), F(7)]))
def test_scaling_the_measure_rescales_radii(code, factor):
    ch, Q = block(code.n)
    base = classify_qp(code, ch, Q)
    scaled = classify_qp(code, ch, scaled_measure(Q, factor), check_qc=False)
    assert scaled.verdict == base.verdict
    assert scaled.radii.eta == base.radii.eta / factor


@given(small_code())
def test_quasi_perfect_means_packing_not_above_covering(code):
    ch, Q = block(code.n)
    cls = classify_qp(code, ch, Q)
    if code.M > 1:
        assert cls.quasi_perfect == (cls.radii.nu <= cls.radii.eta)
