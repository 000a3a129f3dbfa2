"""Exhaustive search for minimum-error binary codes of small size.

A binary M x n code is stored as the multiset of its n columns, each column
being an M-bit pattern.  Column order is irrelevant for a memoryless channel,
and when swapping the two inputs is a channel symmetry a column may also be
replaced by its complement; both equivalences are quotiented out.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..channel import ProductChannel
from ..numeric import BudgetExceeded
from .core import Codebook

DEFAULT_SEARCH_BUDGET = 2_000_000


@dataclass(frozen=True)
class SearchResult:
    code: Codebook
    value: object
    exact: bool
    examined: int


def swap_symmetric(base) -> bool:
    """Whether some output relabeling maps W(.|0) to W(.|1) and back."""
    if base.n_inputs != 2:
        return False
    pairs = [(int(a), int(b)) if base.exact else (float(a), float(b))
             for a, b in zip(base.weights[0], base.weights[1])]
    return Counter(pairs) == Counter((b, a) for a, b in pairs)


def column_classes(M: int, fold_complement: bool) -> list[int]:
    """Column patterns (bit M-1-m is codeword m's symbol); first codeword 0 when folded."""
    top = 1 << (M - 1) if fold_complement else 1 << M
    return list(range(top))


def columns_to_words(columns, M: int) -> list[tuple]:
    return [tuple((c >> (M - 1 - m)) & 1 for c in columns) for m in range(M)]


def _distinct_rows(columns, M):
    return len(set(columns_to_words(columns, M))) == M


def enumerate_columns(n: int, M: int, fold_complement: bool):
    """Yield canonical column tuples in nondecreasing order."""
    classes = column_classes(M, fold_complement)

    def rec(prefix, start):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for j in range(start, len(classes)):
            prefix.append(classes[j])
            yield from rec(prefix, j)
            prefix.pop()

    yield from rec([], 0)


def best_code_search(n: int, M: int, ch, budget: int = DEFAULT_SEARCH_BUDGET) -> SearchResult:
    """Minimum ML error probability over binary (n, M) codes on ``ch``.

    Exact (``exact=True``) whenever every canonical code was examined;
    otherwise the best code found within ``budget`` leaves is returned.
    """
    base = ch.base if isinstance(ch, ProductChannel) else ch
    if base.n_inputs != 2:
        raise ValueError("code search is implemented for binary-input channels")
    if not 1 <= M <= 2 ** n:
        raise ValueError(f"need 1 <= M <= 2^n, got M={M}")
    if base.n_outputs ** n * M > 1 << 26:
        raise BudgetExceeded(f"|Y|^n = {base.n_outputs ** n} too large for code search")
    fold = swap_symmetric(base)
    if (1 << (M - 1 if fold else M)) > budget:
        raise BudgetExceeded(f"{M}-codeword column alphabet exceeds the search budget")
    classes = column_classes(M, fold)
    w = base.weights
    if base.exact:
        dtype = np.int64 if int(w.max()) ** n < 2 ** 62 // max(M, 1) else object
        w = w.astype(dtype)
    # likelihood row of each codeword symbol under each column class
    col_rows = {c: w[[(c >> (M - 1 - m)) & 1 for m in range(M)]] for c in classes}
    best = {"total": None, "cols": None}
    examined = 0
    truncated = False

    def rec(prefix, rows, start):
        nonlocal examined, truncated
        if len(prefix) == n:
            if not _distinct_rows(prefix, M):
                return
            examined += 1
            total = rows.max(axis=0).sum()
            if best["total"] is None or total > best["total"]:
                best["total"], best["cols"] = total, tuple(prefix)
            return
        for j in range(start, len(classes)):
            if examined >= budget:
                truncated = True
                return
            c = classes[j]
            step = col_rows[c]
            nxt = (rows[:, :, None] * step[:, None, :]).reshape(M, -1)
            prefix.append(c)
            rec(prefix, nxt, j)
            prefix.pop()

    rec([], np.ones((M, 1), dtype=w.dtype), 0)
    if best["cols"] is None:
        raise ValueError(f"no binary code with M={M} distinct words of length {n}")
    code = Codebook(columns_to_words(best["cols"], M), 2)
    if base.exact:
        value = 1 - Fraction(int(best["total"]), base.scale ** n * M)
    else:
        value = 1.0 - float(best["total"]) / M
    return SearchResult(code, value, not truncated, examined)


def iter_distance_tables(n: int, M: int, fold_complement: bool = True):
    """Yield (columns, table) over canonical binary (n, M) codes with distinct words.

    ``table[v, m]`` is the Hamming distance from source word v (index in
    ``itertools.product`` order) to codeword m.
    """
    classes = column_classes(M, fold_complement)
    bits = {c: np.array([(c >> (M - 1 - m)) & 1 for m in range(M)], dtype=np.int16) for c in classes}

    def rec(prefix, table, start):
        if len(prefix) == n:
            if _distinct_rows(prefix, M):
                yield tuple(prefix), table
            return
        for j in range(start, len(classes)):
            b = bits[classes[j]]
            # appending a coordinate doubles the source words: v_i = 0 then 1
            nxt = np.stack([table + b, table + (1 - b)], axis=1).reshape(-1, M)
            prefix.append(classes[j])
            yield from rec(prefix, nxt, j)
            prefix.pop()

    yield from rec([], np.zeros((1, M), dtype=np.int16), 0)
