import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaconverse.bounds import (
    erasure_error_bound, jscc_bound, fixed_gamma_bound, matched_code_error, mds_bound, metaconverse_symmetric, optimize_psi,
    psi_threshold, psi_mds,
)
from metaconverse.channel import (
    Channel, ErasureErrorParams, bec, bsc, erasure_error_channel, product_channel, qstar_erasure, uniform_output,
)
from metaconverse.codes import Codebook, map_error_probability, ml_error_probability
from metaconverse.numeric import HypothesisViolation


def test_repetition_code_closed_form():
    p = ErasureErrorParams(2, F(1, 4), F(0))
    rep = erasure_error_bound(3, p, 2, [1, 1, 0, 0])
    assert rep.value == F(5, 32)
    assert psi_threshold(3, 2) == [1, 1, 0, 0]


def test_psi_families():
    assert psi_threshold(7, 16) == [2, 1, 1, 0, 0, 0, 0, 0]
    assert psi_mds(3, 2, 4) == [1, 1, 0, 0]
    assert psi_mds(7, 8, 512) == [1, 1, 1, 1, 1, 0, 0, 0]


def test_mds_bound_frozen():
    assert mds_bound(3, 2, F(1, 4), 4).value == F(21, 256)
    assert mds_bound(2, 2, F(1, 4), 4).value == F(15, 64)
    assert mds_bound(7, 8, F(1, 4), 512).witness["first_e"] == 5
    with pytest.raises(ValueError):
        mds_bound(3, 2, F(2), 4)


def test_metaconverse_frozen_and_routes():
    ch = product_channel(bsc(F(1, 4)), 7)
    rep = metaconverse_symmetric(ch, uniform_output(ch), 16)
    assert rep.value == F(4547, 8192) == rep.witness["alpha_route"]


def test_metaconverse_float_mode_close():
    ch = product_channel(bsc(0.25), 5)
    exact = metaconverse_symmetric(product_channel(bsc(F(1, 4)), 5), uniform_output(product_channel(bsc(F(1, 4)), 5)), 4)
    assert abs(metaconverse_symmetric(ch, uniform_output(ch), 4).value - float(exact.value)) < 1e-12


def test_nonsymmetric_channel_rejected():
    ch = Channel.from_rows([[F(1, 2), F(1, 2)], [F(1, 3), F(2, 3)]])
    with pytest.raises(HypothesisViolation):
        metaconverse_symmetric(ch, uniform_output(ch), 2)


@pytest.mark.parametrize("n,q,eps,delta,M", [(3, 2, F(1, 4), F(1, 10), 2), (2, 3, F(1, 20), F(1, 4), 3),
                                              (4, 2, F(1, 5), F(1, 5), 4)])
def test_closed_form_equals_fixed_gamma_bound_at_c(n, q, eps, delta, M):
    p = ErasureErrorParams(q, eps, delta)
    for psi in (psi_threshold(n, M, q), optimize_psi(n, p, M)[0], [0] * (n + 1)):
        ch = product_channel(erasure_error_channel(p), n)
        Q, c = qstar_erasure(n, p, psi)
        closed = erasure_error_bound(n, p, M, psi)
        assert closed.witness["gamma"] == c
        assert fixed_gamma_bound(ch, Q, M, c).value == closed.value


def test_optimized_psi_dominates_threshold():
    p = ErasureErrorParams(2, F(1, 20), F(1, 4))
    for n in range(2, 7):
        full = optimize_psi(n, p, 4)[1].value
        assert full >= optimize_psi(n, p, 4, "threshold")[1].value >= erasure_error_bound(n, p, 4, psi_threshold(n, 4)).value


def test_mds_bound_matches_erasure_error_bound_without_errors():
    p = ErasureErrorParams(2, F(0), F(1, 4))
    for n in range(2, 6):
        assert erasure_error_bound(n, p, 4, psi_mds(n, 2, 4)).value == mds_bound(n, 2, F(1, 4), 4).value


@st.composite
def code_and_channel(draw):
    n = draw(st.integers(1, 3))
    M = draw(st.integers(1, min(4, 2 ** n)))
    words = draw(st.lists(st.tuples(*[st.integers(0, 1)] * n), min_size=M, max_size=M, unique=True))
    kind = draw(st.sampled_from(["bsc", "bec", "mixed"]))
    e = draw(st.sampled_from([F(1, 10), F(1, 4)]))
    p = {"bsc": ErasureErrorParams(2, e, F(0)), "bec": ErasureErrorParams(2, F(0), e),
         "mixed": ErasureErrorParams(2, e / 2, e)}[kind]
    return Codebook(words, 2), p


@given(code_and_channel(), st.fractions(0, 20, max_denominator=8))
def test_sandwich_every_bound_below_exact_error(cp, gamma):
    code, p = cp
    ch = product_channel(erasure_error_channel(p), code.n)
    Q = uniform_output(ch)
    pe = ml_error_probability(code, ch)
    mc = metaconverse_symmetric(ch, Q, code.M).value
    assert fixed_gamma_bound(ch, Q, code.M, gamma).value <= mc <= pe
    assert optimize_psi(code.n, p, code.M)[1].value <= pe


def test_jscc_frozen_and_lemma4():
    src = [F(1, 2), F(3, 10), F(1, 5)]
    ch = Channel.from_rows([[F(1), F(0)], [F(0), F(1)]])
    Q = uniform_output(ch)
    assert jscc_bound(src, ch, Q).value == F(1, 5)
    enc = [(0,), (1,), (1,)]
    assert matched_code_error(enc, src, ch, Q) == map_error_probability(enc, src, ch) == F(1, 5)


@given(st.lists(st.integers(1, 9), min_size=2, max_size=5), st.sampled_from([F(1, 10), F(1, 4)]))
def test_jscc_bound_below_map_optimum(w, e):
    src = [F(v, sum(w)) for v in w]
    ch = product_channel(bsc(e), 2)
    Q = uniform_output(ch)
    b = jscc_bound(src, ch, Q).value
    best = min(map_error_probability(enc, src, ch) for enc in itertools.product(ch.inputs, repeat=len(src)))
    assert b <= best


def test_interface_aliases_point_at_descriptive_names():
    import metaconverse
    from metaconverse import hypothesis, sourcecoding
    assert metaconverse.lemma3_bound is fixed_gamma_bound and metaconverse.psi_eq39 is psi_threshold
    assert metaconverse.lemma4_error is matched_code_error
    assert hypothesis.lemma1_objective is hypothesis.np_sup_objective
    assert sourcecoding.lossy_bound_kostina is sourcecoding.lossy_bound_uniform
    assert sourcecoding.theorem3_check is sourcecoding.lossy_attainment_check
