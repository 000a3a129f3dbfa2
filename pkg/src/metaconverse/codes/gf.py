"""Arithmetic in GF(2^m) for m <= 8 via exp/log tables."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

# primitive polynomial per m, as a bit pattern including the x^m term
MODULI = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
}


class GF2m:
    """Elements are ints 0..2^m-1 (polynomial bit patterns); alpha = 2."""

    def __init__(self, m: int):
        if m not in MODULI:
            raise ValueError(f"GF(2^m) supported for 1 <= m <= 8, got m={m}")
        self.m = m
        self.q = 1 << m
        self.modulus = MODULI[m]
        order = self.q - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        v = 1
        for i in range(order):
            exp[i] = v
            if log[v] != -1:
                raise ValueError("modulus is not primitive")
            log[v] = i
            v <<= 1
            if v & self.q:
                v ^= self.modulus
        exp[order:] = exp[:order]
        self.exp, self.log, self.order = exp, log, order
        a = np.arange(self.q)
        self.mul_table = np.zeros((self.q, self.q), dtype=np.int64)
        nz = a[1:]
        self.mul_table[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % order]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        return int(self.exp[(self.order - self.log[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 1 if k == 0 else 0
        return int(self.exp[(self.log[a] * k) % self.order])

    def alpha(self, i: int) -> int:
        return int(self.exp[i % self.order])

    def poly_eval(self, coeffs, x: int) -> int:
        """coeffs[i] is the coefficient of x^i."""
        acc = 0
        for c in reversed(coeffs):
            acc = self.mul(acc, x) ^ c
        return acc

    def __repr__(self):
        return f"GF(2^{self.m})"


@lru_cache(maxsize=None)
def field(m: int) -> GF2m:
    return GF2m(m)
