"""Dual exact/float probability values.

Exact values are ``fractions.Fraction``; float values are plain ``float``.
Vectors of probabilities are stored as an integer numerator array plus one
common denominator (``scale``) so that products and sums over large output
spaces stay exact while still running through numpy.  In float mode the
array holds floats and ``scale`` is ``None``.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import reduce
from numbers import Rational

import numpy as np

INF = math.inf
FLOAT_ROW_TOL = 1e-12
LEVEL_MERGE_RTOL = 1e-9
_INT64_SAFE = 2**62


class BudgetExceeded(ValueError):
    """An enumeration would exceed the configured size budget."""


class HypothesisViolation(ValueError):
    """An attainment precondition (symmetry, Q in Qc, ...) does not hold."""


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def parse_prob(text: str, exact: bool = True):
    """Parse ``"a/b"`` or a decimal string.

    Fractions always parse exactly; decimals parse exactly when ``exact``.
    """
    s = text.strip()
    if "/" in s or exact:
        return Fraction(s)
    return float(s)


def to_fraction(x) -> Fraction:
    """Exact value of ``x``; floats go through their shortest repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        return Fraction(repr(float(x)))
    return Fraction(x)


def coerce(values, mode: str | None = None):
    """Normalize a flat sequence to all-Fraction or all-float.

    ``mode`` is ``"rational"``, ``"float"`` or ``None`` (auto: rational only
    if every entry is already rational or a fraction string).
    """
    values = list(values)
    if mode is None:
        exact = all(is_exact(v) or (isinstance(v, str) and "/" in v) for v in values)
        mode = "rational" if exact else "float"
    if mode == "rational":
        return [to_fraction(v) for v in values], True
    if mode == "float":
        return [float(Fraction(v)) if isinstance(v, str) else float(v) for v in values], False
    raise ValueError(f"unknown numeric mode {mode!r}")


def _as_int_array(ints):
    ints = [int(v) for v in ints]
    if ints and max(abs(v) for v in ints) >= _INT64_SAFE:
        return np.array(ints, dtype=object)
    return np.array(ints, dtype=np.int64)


def scale_fractions(values):
    """Return (integer numerators, common denominator) for Fractions."""
    den = reduce(math.lcm, (v.denominator for v in values), 1)
    return _as_int_array(v.numerator * (den // v.denominator) for v in values), den


def to_weights(values, mode: str | None = None):
    """Flat sequence -> (weights array, scale) in the chosen backend."""
    vals, exact = coerce(values, mode)
    if exact:
        return scale_fractions(vals)
    return np.asarray(vals, dtype=np.float64), None


def value(num, scale):
    """Turn a numerator (or float) and a scale back into a ProbValue."""
    if scale is None:
        return float(num)
    return Fraction(int(num), int(scale))


def safe_power_dtype(max_entry: int, n: int):
    """int64 when every n-fold product of entries fits, else object."""
    return np.int64 if max(int(max_entry), 1) ** n < _INT64_SAFE else object


def ratio(w, q):
    """Likelihood ratio with the 0/0 = 0 and w/0 = +inf convention."""
    if q > 0:
        return Fraction(w) / Fraction(q) if is_exact(w) and is_exact(q) else w / q
    return 0 if w == 0 else INF


def merge_float_levels(sorted_desc, rtol: float = LEVEL_MERGE_RTOL):
    """Group descending floats whose relative gap is within ``rtol``.

    Returns (representatives, group index per input position).
    """
    reps, groups = [], []
    for v in sorted_desc:
        if reps and (v == reps[-1] or (math.isfinite(v) and math.isfinite(reps[-1])
                                       and abs(reps[-1] - v) <= rtol * max(abs(v), abs(reps[-1])))):
            groups.append(len(reps) - 1)
        else:
            reps.append(v)
            groups.append(len(reps) - 1)
    return reps, groups


def fsum_values(vals):
    """Exact sum for rationals, compensated sum for floats."""
    vals = list(vals)
    if all(is_exact(v) for v in vals):
        return sum(vals, Fraction(0))
    return math.fsum(float(v) for v in vals)


def render(x, digits: int = 15) -> str:
    """Decimal rendering of a ProbValue to ``digits`` significant digits."""
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, f".{digits}g")
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, f".{digits}g") if d != 0 else "0"
