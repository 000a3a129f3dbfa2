"""Meta-converse lower bounds for symmetric channels and their closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .channel import ErasureErrorParams, _measure, psi_table
from .codes.core import ceil_log, floor_log
from .geometry import classify_jscc, spectrum
from .hypothesis import alpha_beta
from .numeric import INF, HypothesisViolation, is_exact, value


@dataclass
class BoundReport:
    name: str
    value: object
    witness: dict = field(default_factory=dict)
    attained: bool | None = None

    @property
    def display(self):
        """Value clipped to [0, 1]; ``value`` keeps the raw expression."""
        return min(max(self.value, 0 * self.value), 0 * self.value + 1)


def _inv(M, exact):
    return Fraction(1, M) if exact else 1.0 / M


def _qc_spectrum(ch, Q, check):
    x0 = ch.inputs[0]
    sp = spectrum(ch, Q, x0, check=check)
    if not sp.in_qc:
        raise HypothesisViolation("Q is not in Qc for this channel; the bound is not input independent")
    return sp


def gamma_objective(sp, M, gamma):
    """gamma * (Q_i(gamma) - 1/M) + sum over levels tau <= gamma of tau * Q_o(tau)."""
    exact = all(is_exact(v) for v in sp.q_mass)
    if gamma == INF:
        raise ValueError("gamma must be finite")
    return gamma * (sp.Q_interior(gamma) - _inv(M, exact)) + sp.w_below(gamma)


def fixed_gamma_bound(ch, Q, M: int, gamma, check: bool = True) -> BoundReport:
    """Error-probability lower bound of any M-word code at a fixed gamma."""
    if M < 1 or gamma < 0:
        raise ValueError("need M >= 1 and gamma >= 0")
    sp = _qc_spectrum(ch, Q, check)
    return BoundReport("fixed_gamma", gamma_objective(sp, M, gamma), {"gamma": gamma})


def metaconverse_symmetric(ch, Q, M: int, check: bool = True) -> BoundReport:
    """max_gamma of the fixed-gamma bound, cross-checked against alpha_{1/M}(W(.|x0), Q).

    Both routes are evaluated; in exact mode they must agree.
    """
    if M < 1:
        raise ValueError("M must be positive")
    sp = _qc_spectrum(ch, Q, check)
    exact = all(is_exact(v) for v in sp.q_mass)
    best, best_gamma = None, None
    for g in [*sp.finite_levels, Fraction(0) if exact else 0.0]:
        v = gamma_objective(sp, M, g)
        if best is None or v > best:
            best, best_gamma = v, g
    qw, qs = _measure(Q)
    row = ch.row(ch.inputs[0])
    np_point = alpha_beta(row, [value(w, qs) for w in qw], _inv(M, exact))
    if exact and np_point.alpha != best:
        raise ArithmeticError(f"level scan {best} disagrees with the NP trade-off {np_point.alpha}")
    return BoundReport("metaconverse", best, {"gamma": best_gamma, "alpha_route": np_point.alpha,
                                              "np_gamma": np_point.gamma, "np_theta": np_point.theta})


# --------------------------------------------------------------------------
# Erasure/error channels

def _psi_term(n, p: ErasureErrorParams, M, e, psi_e):
    """Contribution of erasure count e to the closed-form bound."""
    phi, inv = p.phi, _inv(M, p.exact)
    inner = sum(math.comb(n - e, d) * (p.q - 1) ** d * (phi ** max(d, psi_e) - phi ** psi_e * inv)
                for d in range(n - e + 1))
    return math.comb(n, e) * p.delta ** e * p.correct ** (n - e) * inner


def erasure_error_bound(n: int, p: ErasureErrorParams, M: int, psi) -> BoundReport:
    """Closed-form bound for n uses of the q-ary erasure/error channel.

    Evaluated as a double sum over (erasures e, flips d) with exact binomials;
    it is the fixed-gamma bound at gamma = c with the auxiliary law Q*(Psi).
    """
    table = psi_table(n, psi)
    total = sum(_psi_term(n, p, M, e, table[e]) for e in range(n + 1))
    c = sum(math.comb(n, e) * p.q ** (n - e) * p.correct ** (n - e) * p.delta ** e * p.phi ** table[e]
            for e in range(n + 1))
    return BoundReport("erasure_error", total, {"psi": table, "gamma": c})


def psi_threshold(n: int, M: int, q: int = 2, K: int | None = None) -> list[int]:
    """Psi(e) = max(0, floor((K - e + 1)/2)) with K = ceil(n - log_q M), capped at n - e."""
    if K is None:
        K = n - floor_log(M, q)
    return [min(n - e, max(0, (K - e + 1) // 2)) for e in range(n + 1)]


def psi_mds(n: int, q: int, M: int) -> list[int]:
    """A Psi that vanishes exactly when e > n - log_q M (the erasure-only limit)."""
    return [0 if q ** (n - e) < M else min(1, n - e) for e in range(n + 1)]


def optimize_psi(n: int, p: ErasureErrorParams, M: int, family: str = "per_e"):
    """Best integer Psi within a family; returns (table, report).

    ``per_e`` scans every Psi(e) in 0..n-e independently, which is globally
    optimal because the bound is a sum of per-e terms.  ``threshold`` scans the
    threshold K of :func:`psi_threshold`.  Ties keep the smaller value.
    """
    if family == "per_e":
        table = []
        for e in range(n + 1):
            best, arg = None, 0
            for s in range(n - e + 1):
                v = _psi_term(n, p, M, e, s)
                if best is None or v > best:
                    best, arg = v, s
            table.append(arg)
    elif family == "threshold":
        best, table = None, None
        for K in range(0, 2 * n + 2):
            cand = psi_threshold(n, M, p.q, K)
            v = erasure_error_bound(n, p, M, cand).value
            if best is None or v > best:
                best, table = v, cand
    else:
        raise ValueError(f"unknown Psi family {family!r}")
    report = erasure_error_bound(n, p, M, table)
    report.witness["family"] = family
    return table, report


def mds_bound(n: int, q: int, delta, M: int) -> BoundReport:
    """Erasure-only bound: sum over e with q^(n-e) < M of C(n,e) d^e (1-d)^(n-e) (1 - q^(n-e)/M)."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    exact = is_exact(delta)
    total = Fraction(0) if exact else 0.0
    for e in range(n + 1):
        if q ** (n - e) < M:
            frac = 1 - (Fraction(q ** (n - e), M) if exact else q ** (n - e) / M)
            total += math.comb(n, e) * delta ** e * (1 - delta) ** (n - e) * frac
    return BoundReport("mds", total, {"first_e": n - ceil_log(M, q) + 1})


# --------------------------------------------------------------------------
# Source-channel coding

def _jscc_objective(sp, probs, gamma):
    exact = all(is_exact(v) for v in sp.q_mass) and all(is_exact(v) for v in probs)
    total = Fraction(0) if exact else 0.0
    qi = Fraction(0) if exact else 0.0
    for pv in probs:
        if pv == 0:
            continue
        t = gamma / pv
        total += pv * sp.w_below(t)
        qi += sp.Q_interior(t)
    return total + gamma * (qi - 1)


def jscc_bound(source, ch, Q, check: bool = True) -> BoundReport:
    """Source-channel bound: max over gamma of the source-weighted sphere expression.

    The objective is piecewise linear with breakpoints P_V(v) * tau, tau in
    the level set; those points and 0 are scanned.
    """
    probs = list(source)
    sp = _qc_spectrum(ch, Q, check)
    exact = all(is_exact(v) for v in probs) and all(is_exact(v) for v in sp.q_mass)
    grid = {Fraction(0) if exact else 0.0}
    grid |= {pv * t for pv in probs if pv > 0 for t in sp.finite_levels}
    best, best_gamma = None, None
    for g in sorted(grid, reverse=True):
        v = _jscc_objective(sp, probs, g)
        if best is None or v > best:
            best, best_gamma = v, g
    return BoundReport("jscc", best, {"gamma": best_gamma})


def matched_code_error(encoder, source, ch, Q, gamma=None, check: bool = True):
    """Exact MAP error of a source-matched quasi-perfect code from its spectrum.

    ``gamma`` defaults to the classifier's witness and must lie between the
    packing and covering radii of the source-scaled spheres.
    """
    qp = classify_jscc(encoder, source, ch, Q, check_qc=check)
    if not qp.quasi_perfect:
        raise HypothesisViolation("code is not quasi-perfect for this source and Q")
    if gamma is None:
        gamma = qp.witness_gamma
    if not qp.radii.nu <= gamma <= qp.radii.eta:
        raise HypothesisViolation(f"gamma={gamma} is not a witness (need nu <= gamma <= eta)")
    sp = _qc_spectrum(ch, Q, check)
    return _jscc_objective(sp, list(source), gamma)


# names kept for interface compatibility
lemma3_bound = fixed_gamma_bound
lemma4_error = matched_code_error
psi_eq39 = psi_threshold
