from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from metaconverse.hypothesis import (
    alpha_beta, alpha_beta_oracle, alpha_beta_sup, alpha_beta_vertices, np_sup_objective, ratio_levels, test_errors,
)
from strategies import distribution_pair, probability


def test_boundary_budget_uses_full_acceptance_of_a_level():
    pt = alpha_beta([F(1, 2), F(1, 2)], [F(9, 10), F(1, 10)], F(1, 10))
    assert (pt.alpha, pt.gamma, pt.theta) == (F(1, 2), F(5), F(1))


def test_randomized_test_achieves_the_reported_point():
    P0, P1 = [F(1, 2), F(1, 4), F(1, 4)], [F(1, 8), F(3, 8), F(1, 2)]
    pt = alpha_beta(P0, P1, F(1, 4))
    T = [1 if P0[z] > pt.gamma * P1[z] else (pt.theta if P0[z] == pt.gamma * P1[z] else 0) for z in range(3)]
    assert test_errors(P0, P1, T) == (pt.alpha, F(1, 4))
    # frozen: accept z=0 fully (beta 1/8), then 1/3 of z=1 (ratio 2/3)
    assert pt.alpha == F(1, 2) - F(1, 4) * F(1, 3)


def test_identical_and_disjoint_extremes():
    P = [F(1, 3), F(2, 3)]
    assert alpha_beta(P, P, F(1, 4)).alpha == F(3, 4)
    assert alpha_beta([F(1), F(0)], [F(0), F(1)], F(0)).alpha == 0


def test_input_validation():
    with pytest.raises(ValueError):
        alpha_beta([F(1)], [F(1, 2), F(1, 2)], F(1, 2))
    with pytest.raises(ValueError):
        alpha_beta([F(1)], [F(1)], F(2))
    with pytest.raises(ValueError):
        test_errors([F(1)], [F(1)], [2])


def test_float_mode_close_to_rational():
    P0, P1 = [0.2, 0.3, 0.5], [0.5, 0.3, 0.2]
    exact = alpha_beta([F(1, 5), F(3, 10), F(1, 2)], [F(1, 2), F(3, 10), F(1, 5)], F(1, 3)).alpha
    assert abs(alpha_beta(P0, P1, 1 / 3).alpha - float(exact)) < 1e-12


def test_levels_are_descending_and_pool_mass():
    lv = ratio_levels([F(1, 4), F(1, 4), F(1, 2)], [F(1, 8), F(1, 8), F(3, 4)])
    assert [r for r, *_ in lv] == [F(2), F(2, 3)]
    assert lv[0][1:] == (F(1, 2), F(1, 4))


@given(distribution_pair(), probability)
def test_four_routes_agree(pair, beta):
    P0, P1 = pair
    a = alpha_beta(P0, P1, beta).alpha
    assert a == alpha_beta_oracle(P0, P1, beta) == alpha_beta_sup(P0, P1, beta) == alpha_beta_vertices(P0, P1, beta)


@given(distribution_pair(), probability, probability)
def test_nonincreasing_and_convex_in_beta(pair, b1, b2):
    P0, P1 = pair
    lo, hi = min(b1, b2), max(b1, b2)
    f = lambda b: alpha_beta(P0, P1, b).alpha
    assert f(hi) <= f(lo)
    mid = (lo + hi) / 2
    assert 2 * f(mid) <= f(lo) + f(hi)


@given(distribution_pair(), probability, st.fractions(0, 10, max_denominator=20))
def test_sup_form_lower_bounds_every_gamma(pair, beta, gamma):
    P0, P1 = pair
    assert np_sup_objective(P0, P1, beta, gamma) <= alpha_beta(P0, P1, beta).alpha


@given(distribution_pair(), probability)
def test_trade_off_stays_in_unit_interval_and_above_chance(pair, beta):
    P0, P1 = pair
    a = alpha_beta(P0, P1, beta).alpha
    assert 0 <= a <= 1
    # no test beats the trivial line alpha + beta >= 0 and alpha <= 1 - beta when P0 == P1
    if P0 == P1:
        assert a == 1 - beta
