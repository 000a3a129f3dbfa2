"""Exact Neyman-Pearson trade-off between two finite distributions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .numeric import INF, fsum_values, is_exact, merge_float_levels, ratio

ORACLE_MAX_SIZE = 20


@dataclass(frozen=True)
class NPPoint:
    """Optimal test at a given type-II budget.

    ``alpha`` is pi_{1|0}, ``beta`` is pi_{0|1}; the test accepts H0 when
    P0/P1 > gamma and with probability ``theta`` when P0/P1 == gamma.
    """
    alpha: object
    beta: object
    gamma: object
    theta: object


def _check_pair(P0, P1):
    P0, P1 = list(P0), list(P1)
    if len(P0) != len(P1):
        raise ValueError(f"alphabet mismatch: {len(P0)} vs {len(P1)} symbols")
    return P0, P1


def _exact(*seqs):
    return all(is_exact(v) for s in seqs for v in s)


def test_errors(P0, P1, T):
    """(pi_{1|0}, pi_{0|1}) of a randomized test T(z) = P[decide H0 | z]."""
    P0, P1 = _check_pair(P0, P1)
    T = list(T)
    if len(T) != len(P0):
        raise ValueError("test and distributions have different alphabets")
    if any(t < 0 or t > 1 for t in T):
        raise ValueError("test values must lie in [0, 1]")
    accept0 = fsum_values(t * p for t, p in zip(T, P0))
    return 1 - accept0, fsum_values(t * p for t, p in zip(T, P1))


def ratio_levels(P0, P1):
    """Levels of P0/P1 in descending order with pooled (P0, P1) masses."""
    P0, P1 = _check_pair(P0, P1)
    exact = _exact(P0, P1)
    pooled: dict = {}
    for a, b in zip(P0, P1):
        r = ratio(a, b)
        m0, m1 = pooled.get(r, (0, 0))
        pooled[r] = (m0 + a, m1 + b)
    keys = sorted(pooled, reverse=True)
    if exact:
        return [(k, *pooled[k]) for k in keys]
    reps, groups = merge_float_levels([float(k) for k in keys])
    merged = [[r, 0.0, 0.0] for r in reps]
    for k, g in zip(keys, groups):
        merged[g][1] += pooled[k][0]
        merged[g][2] += pooled[k][1]
    return [tuple(m) for m in merged]


def alpha_beta(P0, P1, beta) -> NPPoint:
    """Smallest pi_{1|0} over tests with pi_{0|1} <= beta, with its NP test."""
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    levels = ratio_levels(P0, P1)
    exact = _exact(P0, P1) and is_exact(beta)
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)
    spent, accepted = zero, zero
    for gamma, m0, m1 in levels:
        if spent + m1 <= beta:
            spent += m1
            accepted += m0
            if spent == beta and m1 > 0:
                return NPPoint(one - accepted, beta, gamma, one)
            continue
        theta = (beta - spent) / m1
        return NPPoint(one - accepted - theta * m0, beta, gamma, theta)
    gamma = levels[-1][0] if levels else zero
    return NPPoint(max(one - accepted, zero), spent, gamma, one)


def np_sup_objective(P0, P1, beta, gamma):
    """P0[ratio <= gamma] + gamma * P1[ratio > gamma] - gamma * beta."""
    low = fsum_values(m0 for r, m0, _ in ratio_levels(P0, P1) if r <= gamma)
    high = fsum_values(m1 for r, _, m1 in ratio_levels(P0, P1) if r > gamma)
    if gamma == 0:
        return low
    return low + gamma * high - gamma * beta


def alpha_beta_sup(P0, P1, beta):
    """Supremum form of the trade-off, scanned over the finite levels and 0."""
    candidates = {0} | {r for r, _, _ in ratio_levels(P0, P1) if r != INF}
    return max(np_sup_objective(P0, P1, beta, g) for g in candidates)


def alpha_beta_oracle(P0, P1, beta):
    """Independent check of :func:`alpha_beta`.

    Fills T(z) symbol by symbol (fractional knapsack), ordering symbols by
    cross-multiplied likelihoods so no ratio or level grouping is involved.
    """
    P0, P1 = _check_pair(P0, P1)
    if len(P0) > ORACLE_MAX_SIZE:
        raise ValueError(f"oracle limited to {ORACLE_MAX_SIZE} symbols")

    def cmp(a, b):
        lhs, rhs = P0[a] * P1[b], P0[b] * P1[a]
        return -1 if lhs > rhs else (1 if lhs < rhs else 0)

    budget = beta
    accept = 0
    support = [z for z in range(len(P0)) if P0[z] or P1[z]]
    for z in sorted(support, key=cmp_to_key(cmp)):
        if P1[z] == 0:
            accept += P0[z]
        elif budget >= P1[z]:
            budget -= P1[z]
            accept += P0[z]
        else:
            accept += P0[z] * budget / P1[z]
            budget = 0
    return 1 - accept


def alpha_beta_vertices(P0, P1, beta):
    """Brute force over LP vertices: full acceptance sets plus one split symbol."""
    P0, P1 = _check_pair(P0, P1)
    if len(P0) > 12:
        raise ValueError("vertex enumeration limited to 12 symbols")
    best = 1
    idx = range(len(P0))
    for r in range(len(P0) + 1):
        for A in itertools.combinations(idx, r):
            cost = sum(P1[z] for z in A)
            if cost > beta:
                continue
            gain = sum(P0[z] for z in A)
            best = min(best, 1 - gain)
            for z in idx:
                if z in A or P1[z] == 0:
                    continue
                t = min(1, (beta - cost) / P1[z])
                best = min(best, 1 - gain - t * P0[z])
    return best


test_errors.__test__ = False

# name kept for interface compatibility
lemma1_objective = np_sup_objective
