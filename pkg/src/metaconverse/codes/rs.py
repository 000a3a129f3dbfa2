"""Reed-Solomon evaluation codes over GF(2^m) and an errors-and-erasures decoder."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Codebook
from .gf import field

ERASED = -1


@dataclass(frozen=True)
class DecodeResult:
    ok: bool
    message: tuple | None
    codeword: tuple | None


class ReedSolomon:
    """Codewords (p(a_0), ..., p(a_{n-1})) for deg p < k, with a_i = alpha^i.

    Messages are coefficient tuples (constant term first) and are listed in
    ``itertools.product`` order, so codeword index = base-q message value.
    """

    def __init__(self, m: int, n: int, k: int):
        self.gf = field(m)
        q = self.gf.q
        if not 1 <= k <= n <= q - 1:
            raise ValueError(f"need 1 <= k <= n <= {q - 1}, got n={n}, k={k}")
        self.m, self.n, self.k, self.q = m, n, k, q
        self.points = [self.gf.alpha(i) for i in range(n)]
        self.generator = np.array(
            [[self.gf.pow(a, j) for a in self.points] for j in range(k)], dtype=np.int64)

    @property
    def d_min(self) -> int:
        return self.n - self.k + 1

    def encode(self, message) -> tuple:
        if len(message) != self.k:
            raise ValueError(f"message must have {self.k} symbols")
        return tuple(self.gf.poly_eval(list(message), a) for a in self.points)

    def codeword_array(self) -> np.ndarray:
        msgs = np.array(list(itertools.product(range(self.q), repeat=self.k)), dtype=np.int64)
        out = np.zeros((len(msgs), self.n), dtype=np.int64)
        for j in range(self.k):
            out ^= self.gf.mul_table[msgs[:, j][:, None], self.generator[j][None, :]]
        return out

    def codebook(self) -> Codebook:
        return Codebook(map(tuple, self.codeword_array().tolist()), self.q)

    def message_index(self, message) -> int:
        i = 0
        for s in message:
            i = i * self.q + int(s)
        return i

    def decode(self, received) -> DecodeResult:
        """Bounded-distance errors-and-erasures decoding.

        ``received`` holds field symbols or ERASED (-1).  Decodes whenever
        2 * errors + erasures <= n - k; returns ``ok=False`` when no codeword
        lies within that radius (never a silent miscorrection inside it).
        """
        kept = [i for i, s in enumerate(received) if s != ERASED and s is not None]
        if len(kept) < self.k:
            return DecodeResult(False, None, None)
        xs = [self.points[i] for i in kept]
        ys = [int(received[i]) for i in kept]
        t = (len(kept) - self.k) // 2
        poly = _berlekamp_welch(self.gf, xs, ys, self.k, t)
        if poly is None:
            return DecodeResult(False, None, None)
        message = tuple(poly + [0] * (self.k - len(poly)))
        codeword = self.encode(message)
        if sum(codeword[i] != int(received[i]) for i in kept) > t:
            return DecodeResult(False, None, None)
        return DecodeResult(True, message, codeword)


def _solve(gf, A, b):
    """One solution of A x = b over GF(2^m) (free variables set to 0), or None."""
    rows, cols = len(A), len(A[0]) if A else 0
    M = [list(r) + [v] for r, v in zip(A, b)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = gf.inv(M[r][c])
        M[r] = [gf.mul(inv, v) for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [v ^ gf.mul(f, w) for v, w in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(M[i][cols] for i in range(r, rows)):
        return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def _poly_divmod(gf, num, den):
    num = list(num)
    while den and den[-1] == 0:
        den = den[:-1]
    quot = [0] * max(1, len(num) - len(den) + 1)
    inv_lead = gf.inv(den[-1])
    for i in range(len(num) - len(den), -1, -1):
        coef = gf.mul(num[i + len(den) - 1], inv_lead)
        quot[i] = coef
        if coef:
            for j, d in enumerate(den):
                num[i + j] ^= gf.mul(coef, d)
    return quot, num[:len(den) - 1]


def _berlekamp_welch(gf, xs, ys, k, t):
    """Polynomial of degree < k agreeing with (xs, ys) up to t errors, or None."""
    # unknowns: N_0..N_{k+t-1}, E_0..E_{t-1}; E is monic of degree t
    A, b = [], []
    for x, y in zip(xs, ys):
        row = [gf.pow(x, j) for j in range(k + t)]
        row += [gf.mul(y, gf.pow(x, j)) for j in range(t)]
        A.append(row)
        b.append(gf.mul(y, gf.pow(x, t)))
    sol = _solve(gf, A, b)
    if sol is None:
        return None
    N = sol[:k + t]
    E = sol[k + t:] + [1]
    quot, rem = _poly_divmod(gf, N, E)
    if any(rem) or any(quot[k:]):
        return None
    return quot[:k]
