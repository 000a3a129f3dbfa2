"""Codebooks, exact ML / MAP error probabilities and distance properties."""
from __future__ import annotations

import itertools
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..channel import DEFAULT_OUTPUT_BUDGET, ProductChannel, word_rows
from ..geometry import scaled_rows
from ..numeric import BudgetExceeded, is_exact, to_weights

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class Codebook:
    """Ordered list of distinct length-n words over {0, ..., q-1}."""

    def __init__(self, words, q: int | None = None):
        words = [tuple(int(s) for s in w) for w in words]
        if not words:
            raise ValueError("a code needs at least one codeword")
        n = len(words[0])
        if any(len(w) != n for w in words):
            raise ValueError("codewords must all have the same length")
        if len(set(words)) != len(words):
            raise ValueError("duplicate codewords")
        top = max(max(w) for w in words) if n else 0
        self.q = top + 1 if q is None else q
        if min(min(w) for w in words) < 0 or top >= self.q:
            raise ValueError(f"symbols must lie in 0..{self.q - 1}")
        self.words = words
        self.n = n

    @property
    def M(self) -> int:
        return len(self.words)

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __getitem__(self, i):
        return self.words[i]

    def array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int64).reshape(self.M, self.n)

    def __repr__(self):
        return f"Codebook(n={self.n}, M={self.M}, q={self.q})"


def _words(code):
    return [tuple(w) for w in getattr(code, "words", code)]


def _output_size(ch, n):
    base = ch.base if isinstance(ch, ProductChannel) else ch
    return base.n_outputs ** n


def _best_per_output(rows_of, count, size, budget):
    """Running max over codeword rows, built in chunks that fit the budget."""
    chunk = max(1, budget // size)
    best = None
    for start in range(0, count, chunk):
        rows, scale = rows_of(start, min(count, start + chunk))
        m = rows.max(axis=0)
        best = m if best is None else np.maximum(best, m)
    return best, scale


def ml_error_probability(code, ch, budget: int = DEFAULT_OUTPUT_BUDGET):
    """1 - (1/M) sum_y max_x W(y|x) for equiprobable messages."""
    words = _words(code)
    n = len(words[0])
    size = _output_size(ch, n)
    if size > budget:
        raise BudgetExceeded(f"|Y|^n = {size} exceeds the enumeration budget {budget}")
    best, scale = _best_per_output(lambda a, b: word_rows(ch, words[a:b]), len(words), size, budget)
    M = len(words)
    if scale is not None:
        return 1 - Fraction(int(best.sum()), scale * M)
    return 1.0 - float(np.sort(best).sum()) / M


def map_error_probability(encoder, source, ch, budget: int = DEFAULT_OUTPUT_BUDGET):
    """1 - sum_y max_v P_V(v) W(y|x_v); codewords may repeat."""
    words = _words(encoder)
    source = list(source)
    if len(words) != len(source):
        raise ValueError(f"{len(words)} codewords for {len(source)} source messages")
    n = len(words[0])
    size = _output_size(ch, n)
    if size > budget:
        raise BudgetExceeded(f"|Y|^n = {size} exceeds the enumeration budget {budget}")

    pv, ps = to_weights(source, "rational" if all(is_exact(p) for p in source) else "float")

    def rows_of(a, b):
        rows, scale = word_rows(ch, words[a:b])
        return scaled_rows(rows, scale, pv[a:b], ps)

    best, scale = _best_per_output(rows_of, len(words), size, budget)
    if scale is not None:
        return 1 - Fraction(int(best.sum()), scale)
    return 1.0 - float(np.sort(best).sum())


def hamming_distance(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


def min_distance(code) -> int:
    words = _words(code)
    if len(words) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    arr = np.array(words)
    best = arr.shape[1]
    for i in range(len(arr) - 1):
        best = min(best, int((arr[i + 1:] != arr[i]).sum(axis=1).min()))
    return best


def ceil_log(M: int, q: int) -> int:
    """Smallest L with q**L >= M."""
    L, p = 0, 1
    while p < M:
        p *= q
        L += 1
    return L


def floor_log(M: int, q: int) -> int:
    """Largest L with q**L <= M."""
    L, p = 0, q
    while p <= M:
        p *= q
        L += 1
    return L


def singleton_defect(code, q: int | None = None):
    """(n - log_q M + 1) - d_min; a Fraction-free float when log_q M is irrational."""
    words = _words(code)
    q = q if q is not None else getattr(code, "q", None)
    n, M = len(words[0]), len(words)
    L = ceil_log(M, q)
    log_term = L if q ** L == M else float(np.log(M) / np.log(q))
    return (n - log_term + 1) - min_distance(words)


def is_mds(code, q: int | None = None) -> bool:
    """d_min equals floor(n - log_q M) + 1."""
    words = _words(code)
    q = q if q is not None else getattr(code, "q", None)
    n, M = len(words[0]), len(words)
    return min_distance(words) == n - ceil_log(M, q) + 1


def exhaustive_ml_decode(code, ch, y) -> int:
    """Index of the most likely codeword; ties go to the lowest index."""
    words = _words(code)
    base = ch.base if isinstance(ch, ProductChannel) else ch
    best, best_i = None, 0
    for i, w in enumerate(words):
        lik = Fraction(1) if base.exact else 1.0
        for s, o in zip(w, y):
            lik *= base.prob(s, o)
            if not lik:
                break
        if best is None or lik > best:
            best, best_i = lik, i
    return best_i


def all_words(n: int, q: int):
    return Codebook(itertools.product(range(q), repeat=n), q)


def format_code(code) -> str:
    code = code if isinstance(code, Codebook) else Codebook(code)
    if code.q > len(DIGITS):
        raise ValueError("code files support alphabets up to 36 symbols")
    lines = [f"# n={code.n} q={code.q}"]
    lines += ["".join(DIGITS[s] for s in w) for w in code]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Codebook:
    n = q = None
    words = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                key, _, val = tok.partition("=")
                if key == "n":
                    n = int(val)
                elif key == "q":
                    q = int(val)
            continue
        try:
            words.append(tuple(DIGITS.index(c) for c in line.lower()))
        except ValueError:
            raise ValueError(f"bad symbol in codeword {line!r}") from None
    if q is None:
        raise ValueError("code file lacks the '# n=<n> q=<q>' header")
    code = Codebook(words, q)
    if n is not None and code.n != n:
        raise ValueError(f"header says n={n} but codewords have length {code.n}")
    return code


def read_code(path) -> Codebook:
    return parse_code(Path(path).read_text())


def write_code(code, path) -> None:
    Path(path).write_text(format_code(code))
