"""Discrete channels, their memoryless extensions, and auxiliary output laws.

A :class:`Channel` keeps its transition matrix as ``weights / scale`` with an
integer ``weights`` array in exact mode.  :class:`ProductChannel` is the
n-fold memoryless extension; its rows are built on demand so that code-level
computations only touch the rows of the codewords involved.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .numeric import (
    FLOAT_ROW_TOL, INF, BudgetExceeded, HypothesisViolation, is_exact, merge_float_levels,
    safe_power_dtype, to_weights, value,
)

ERASURE = "e"
DEFAULT_OUTPUT_BUDGET = 1 << 22


class _DiscreteChannel:
    inputs: tuple
    outputs: tuple
    scale: int | None

    @property
    def exact(self) -> bool:
        return self.scale is not None

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.outputs)

    @cached_property
    def _in_index(self):
        return {x: i for i, x in enumerate(self.inputs)}

    @cached_property
    def _out_index(self):
        return {y: i for i, y in enumerate(self.outputs)}

    def input_index(self, x) -> int:
        return self._in_index[x]

    def output_index(self, y) -> int:
        return self._out_index[y]

    def prob(self, x, y):
        """W(y|x) as a ProbValue."""
        w = self.rows([self.input_index(x)])[0, self.output_index(y)]
        return value(w, self.scale)

    def row(self, x) -> list:
        r = self.rows([self.input_index(x)])[0]
        return [value(w, self.scale) for w in r]


class Channel(_DiscreteChannel):
    """Single-letter channel with finite alphabets."""

    def __init__(self, inputs, outputs, weights, scale, params=None):
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.weights = weights
        self.scale = scale
        self.params = params
        self.weights.setflags(write=False)
        if weights.shape != (len(self.inputs), len(self.outputs)):
            raise ValueError("weight matrix shape does not match the alphabets")
        if (weights < 0).any():
            raise ValueError("transition probabilities must be nonnegative")
        sums = weights.sum(axis=1)
        if scale is not None:
            bad = [i for i, s in enumerate(sums) if s != scale]
        else:
            bad = [i for i, s in enumerate(sums) if abs(s - 1.0) > FLOAT_ROW_TOL]
        if bad:
            raise ValueError(f"row {self.inputs[bad[0]]!r} does not sum to 1")

    @classmethod
    def from_rows(cls, rows, inputs=None, outputs=None, mode=None, params=None):
        rows = [list(r) for r in rows]
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged transition matrix")
        flat, scale = to_weights([v for r in rows for v in r], mode)
        inputs = range(len(rows)) if inputs is None else inputs
        outputs = range(width) if outputs is None else outputs
        return cls(inputs, outputs, flat.reshape(len(rows), width), scale, params)

    def rows(self, indices):
        return self.weights[np.asarray(indices, dtype=np.intp)]

    def block_rows(self, words):
        """Rows of the memoryless extension for n-tuples of input symbols.

        Returns (array of shape (len(words), |Y|**n), scale**n); columns are
        ordered like ``itertools.product(outputs, repeat=n)``.
        """
        idx = np.array([[self.input_index(s) for s in w] for w in words], dtype=np.intp)
        if idx.ndim != 2:
            raise ValueError("words must be equal-length tuples")
        n = idx.shape[1]
        w = self.weights
        if self.exact:
            w = w.astype(safe_power_dtype(w.max(), n))
        out = w[idx[:, 0]]
        for i in range(1, n):
            out = (out[:, :, None] * w[idx[:, i]][:, None, :]).reshape(len(idx), -1)
        return out, (None if self.scale is None else self.scale ** n)

    def __repr__(self):
        return f"Channel({self.n_inputs}x{self.n_outputs}, exact={self.exact})"


class ProductChannel(_DiscreteChannel):
    """n uses of a memoryless channel; symbols are n-tuples."""

    def __init__(self, base: Channel, n: int):
        self.base = base
        self.n = n
        self.scale = None if base.scale is None else base.scale ** n
        self.params = base.params

    @cached_property
    def inputs(self):
        return tuple(itertools.product(self.base.inputs, repeat=self.n))

    @cached_property
    def outputs(self):
        return tuple(itertools.product(self.base.outputs, repeat=self.n))

    def input_index(self, x) -> int:
        k = self.base.n_inputs
        i = 0
        for s in x:
            i = i * k + self.base.input_index(s)
        return i

    def output_index(self, y) -> int:
        k = self.base.n_outputs
        i = 0
        for s in y:
            i = i * k + self.base.output_index(s)
        return i

    def rows(self, indices):
        k = self.base.n_inputs
        words = []
        for i in indices:
            digits = []
            for _ in range(self.n):
                i, r = divmod(int(i), k)
                digits.append(self.base.inputs[r])
            words.append(tuple(reversed(digits)))
        return self.block_rows(words)[0]

    def block_rows(self, words):
        return self.base.block_rows(words)

    @cached_property
    def weights(self):
        return self.rows(range(self.base.n_inputs ** self.n))

    def __repr__(self):
        return f"ProductChannel({self.base!r}, n={self.n})"


def word_rows(ch, words):
    """Likelihood rows for codewords given either a block or per-letter channel."""
    words = [tuple(w) for w in words]
    if isinstance(ch, ProductChannel) and any(len(w) != ch.n for w in words):
        raise ValueError(f"codeword length does not match the block length {ch.n}")
    return ch.block_rows(words)


# --------------------------------------------------------------------------
# Erasure/error family

@dataclass(frozen=True)
class ErasureErrorParams:
    q: int
    eps: object
    delta: object

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("alphabet size must be at least 2")
        if not (0 <= self.eps < 1 and 0 <= self.delta < 1):
            raise ValueError("eps and delta must lie in [0, 1)")
        if self.eps + self.delta > 1:
            raise ValueError("eps + delta must not exceed 1")
        if self.flip >= self.correct:
            raise ValueError(
                f"dominance violated: eps/(q-1) = {self.flip} >= 1-delta-eps = {self.correct}; "
                "the transmitted symbol must be the most likely output")

    @property
    def exact(self) -> bool:
        return is_exact(self.eps) and is_exact(self.delta)

    @property
    def flip(self):
        return Fraction(self.eps) / (self.q - 1) if self.exact else self.eps / (self.q - 1)

    @property
    def correct(self):
        return 1 - self.delta - self.eps

    @property
    def phi(self):
        return self.flip / self.correct


def erasure_error_channel(p: ErasureErrorParams) -> Channel:
    """q-ary symmetric channel with erasures; outputs are 0..q-1 then ERASURE."""
    rows = []
    for x in range(p.q):
        r = [p.correct if y == x else p.flip for y in range(p.q)]
        r.append(p.delta)
        rows.append(r)
    mode = "rational" if p.exact else "float"
    return Channel.from_rows(rows, range(p.q), [*range(p.q), ERASURE], mode=mode, params=p)


def bsc(eps) -> Channel:
    """Binary symmetric channel on {0, 1} (no erasure output)."""
    mode = "rational" if is_exact(eps) else "float"
    return Channel.from_rows([[1 - eps, eps], [eps, 1 - eps]], mode=mode)


def bec(delta) -> Channel:
    return erasure_error_channel(ErasureErrorParams(2, Fraction(0) if is_exact(delta) else 0.0, delta))


def erasure_error_likelihood(p: ErasureErrorParams, n: int, e: int, d: int):
    """n-letter likelihood through the (erasures, flips) sufficient statistic."""
    return p.delta ** e * p.flip ** d * p.correct ** (n - e - d)


def erasure_counts(n: int, q: int) -> np.ndarray:
    """Number of erasures for every output of the n-fold erasure/error channel."""
    single = np.array([0] * q + [1], dtype=np.int64)
    e = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        e = np.add.outer(e, single).ravel()
    return e


def product_channel(ch: Channel, n: int, budget: int = DEFAULT_OUTPUT_BUDGET) -> ProductChannel:
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(ch, ProductChannel):
        raise TypeError("product of a product channel is not supported; extend the base")
    size = ch.n_outputs ** n
    if size > budget:
        raise BudgetExceeded(f"|Y|^n = {size} exceeds the enumeration budget {budget}")
    return ProductChannel(ch, n)


# --------------------------------------------------------------------------
# Auxiliary output distributions

class OutputDistribution:
    """Probability law on a channel's output alphabet (``weights / scale``)."""

    def __init__(self, weights, scale):
        self.weights = weights
        self.scale = scale
        if (weights < 0).any():
            raise ValueError("probabilities must be nonnegative")
        total = weights.sum()
        if scale is not None and total != scale:
            raise ValueError("distribution does not sum to 1")
        if scale is None and abs(total - 1.0) > FLOAT_ROW_TOL * max(1, len(weights)):
            raise ValueError("distribution does not sum to 1")

    @classmethod
    def from_probs(cls, probs, mode=None):
        w, s = to_weights(list(probs), mode)
        return cls(w, s)

    @classmethod
    def uniform(cls, size: int, exact: bool = True):
        if exact:
            return cls(np.ones(size, dtype=np.int64), size)
        return cls(np.full(size, 1.0 / size), None)

    @property
    def exact(self) -> bool:
        return self.scale is not None

    @property
    def probs(self) -> list:
        return [value(w, self.scale) for w in self.weights]

    def __len__(self):
        return len(self.weights)


def uniform_output(ch, exact=None) -> OutputDistribution:
    return OutputDistribution.uniform(ch.n_outputs, ch.exact if exact is None else exact)


def _measure(Q):
    if isinstance(Q, OutputDistribution):
        return Q.weights, Q.scale
    # bare (possibly unnormalized) measure, e.g. gamma * Q
    return to_weights(list(Q))


# --------------------------------------------------------------------------
# Likelihood-ratio levels

@dataclass(frozen=True)
class LevelTable:
    """Distinct ratio values W/Q (descending) and each entry's level index."""
    levels: tuple
    index: np.ndarray


def level_table(rows, row_scale, qw, q_scale) -> LevelTable:
    rows = np.atleast_2d(rows)
    exact = row_scale is not None and q_scale is not None
    if not exact:
        rows = rows.astype(np.float64) / (1 if row_scale is None else row_scale)
        qw = np.asarray(qw, dtype=np.float64) / (1 if q_scale is None else q_scale)
    uw, winv = np.unique(rows, return_inverse=True)
    uq, qinv = np.unique(qw, return_inverse=True)
    nq = len(uq)
    pairs = winv.reshape(rows.shape).astype(np.int64) * nq + qinv.reshape(1, -1)
    up, pinv = np.unique(pairs, return_inverse=True)
    ratios = []
    for p in up:
        w, q = uw[p // nq], uq[p % nq]
        if q > 0:
            ratios.append(Fraction(int(w) * q_scale, row_scale * int(q)) if exact else float(w) / float(q))
        else:
            ratios.append(0 if w == 0 else INF)
    order = sorted(range(len(ratios)), key=lambda i: ratios[i], reverse=True)
    if exact:
        levels, groups = [], []
        for i in order:
            if not levels or ratios[i] != levels[-1]:
                levels.append(ratios[i])
            groups.append(len(levels) - 1)
    else:
        levels, groups = merge_float_levels([ratios[i] for i in order])
    level_of_pair = np.empty(len(up), dtype=np.int64)
    level_of_pair[np.array(order, dtype=np.int64)] = groups
    levels = [Fraction(v) if exact and v != INF else v for v in levels]
    return LevelTable(tuple(levels), level_of_pair[pinv].reshape(rows.shape))


def level_masses(weights, table: LevelTable):
    """Per-row sums of ``weights`` grouped by level; shape (rows, levels)."""
    weights = np.atleast_2d(weights)
    idx = np.broadcast_to(table.index, weights.shape) if table.index.shape != weights.shape else table.index
    out = np.zeros((weights.shape[0], len(table.levels)), dtype=weights.dtype)
    rr = np.broadcast_to(np.arange(weights.shape[0])[:, None], weights.shape)
    np.add.at(out, (rr, idx), weights)
    return out


# --------------------------------------------------------------------------
# Symmetry

def symmetry_fingerprint(ch):
    """Sorted first row if every row is a permutation of it, else ``None``."""
    w = ch.weights
    s = np.sort(w, axis=1)
    if ch.exact:
        ok = bool((s == s[0]).all())
    else:
        ok = bool(np.allclose(s, s[0], rtol=0, atol=FLOAT_ROW_TOL))
    return tuple(value(v, ch.scale) for v in s[0]) if ok else None


def is_symmetric(ch) -> bool:
    """Rows are permutations of each other (finite-alphabet form of F_x = F)."""
    return symmetry_fingerprint(ch) is not None


def _level_mass_by_row(ch, Q):
    qw, qs = _measure(Q)
    if len(qw) != ch.n_outputs:
        raise ValueError("Q does not match the output alphabet")
    w = ch.weights
    table = level_table(w, ch.scale, qw, qs)
    if ch.scale is None or qs is None:
        w = w.astype(np.float64) / (1 if ch.scale is None else ch.scale)
    return level_masses(w, table), table


def q_in_Qc(ch, Q) -> bool:
    """Whether tilting by Q keeps the channel symmetric.

    Compares, across inputs, the channel mass carried by every level of
    W(y|x)/Q(y); equal masses at all levels is exactly F_x(tau, Q) = F(tau, Q).
    """
    if not is_symmetric(ch):
        raise HypothesisViolation("Qc is only defined for symmetric channels")
    masses, _ = _level_mass_by_row(ch, Q)
    if masses.dtype == np.float64:
        return bool(np.allclose(masses, masses[0], rtol=0, atol=1e-12))
    return bool((masses == masses[0]).all())


def tail_function(ch, Q, x, tau):
    """F_x(tau, Q) by direct summation over outputs."""
    qw, qs = _measure(Q)
    i = ch.input_index(x)
    row = ch.rows([i])[0]
    table = level_table(row, ch.scale, qw, qs)
    keep = [k for k, lv in enumerate(table.levels) if lv >= tau]
    mask = np.isin(table.index[0], keep)
    total = row[mask].sum()
    return value(total, ch.scale) if ch.scale is not None else float(total)


def qstar_erasure(n: int, p: ErasureErrorParams, psi):
    """Tilted auxiliary law depending on y only through its erasure count.

    Returns the distribution over the outputs of ``product_channel(
    erasure_error_channel(p), n)`` and the normalizing constant c.  With
    ``eps = 0`` the 0**0 = 1 convention yields the erasure-only limit law
    supported on outputs whose Psi(e) is zero.
    """
    table = psi_table(n, psi)
    u = [p.delta ** e * p.flip ** table[e] * p.correct ** (n - e - table[e]) for e in range(n + 1)]
    c = sum(math.comb(n, e) * p.q ** (n - e) * p.correct ** (n - e) * p.delta ** e * p.phi ** table[e]
            for e in range(n + 1))
    e_of_y = erasure_counts(n, p.q)
    if p.exact:
        u = [Fraction(v) / Fraction(c) for v in u]
        uw, scale = to_weights(u, "rational")
        return OutputDistribution(uw[e_of_y], scale), Fraction(c)
    probs = np.array([v / c for v in u], dtype=np.float64)[e_of_y]
    probs = probs / math.fsum(probs)
    return OutputDistribution(probs, None), float(c)


def psi_table(n: int, psi) -> list:
    """Validate a Psi function (callable, mapping or sequence) on 0..n."""
    if callable(psi):
        table = [psi(e) for e in range(n + 1)]
    else:
        table = [psi[e] for e in range(n + 1)]
    for e, v in enumerate(table):
        if int(v) != v or v < 0:
            raise ValueError(f"Psi({e}) = {v} must be a nonnegative integer")
        if v > n - e:
            raise ValueError(f"Psi({e}) = {v} exceeds n - e = {n - e}")
    return [int(v) for v in table]
