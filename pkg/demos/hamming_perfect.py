"""Hamming(7,4) on a BSC: classification, exact error and the matching bound."""
import itertools
from fractions import Fraction

from metaconverse import bsc, classify_qp, metaconverse_symmetric, product_channel, uniform_output
from metaconverse.codes import Codebook, ml_error_probability

G = [(1, 0, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 0, 1), (0, 0, 1, 0, 0, 1, 1), (0, 0, 0, 1, 1, 1, 1)]
code = Codebook([tuple(sum(m[i] * G[i][j] for i in range(4)) % 2 for j in range(7))
                 for m in itertools.product((0, 1), repeat=4)], 2)

for eps in (Fraction(1, 10), Fraction(1, 4)):
    ch = product_channel(bsc(eps), 7)
    Q = uniform_output(ch)
    cls = classify_qp(code, ch, Q)
    pe = ml_error_probability(code, ch)
    bound = metaconverse_symmetric(ch, Q, code.M).value
    print(f"eps={eps}: {cls.verdict}, eta={cls.radii.eta}, nu={cls.radii.nu}, Pe={pe}, bound={bound}")
