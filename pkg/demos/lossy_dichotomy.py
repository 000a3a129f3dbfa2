"""Excess-distortion optimum vs the uniform-law bound for two thresholds."""
from fractions import Fraction

from metaconverse.sourcecoding import best_lossy_codes, lossy_bound_uniform

Ds = (Fraction(11, 100), Fraction(37, 100))
for n in range(2, 10):
    res = best_lossy_codes(n, 4, Ds)
    cells = []
    for D in Ds:
        ex, b = res[D][1], lossy_bound_uniform(n, 4, D).value
        cells.append(f"D={float(D)}: {ex} {'=' if ex == b else '>'} {b}")
    print(f"n={n} qp={int(res['qp_exists'])}  " + "   ".join(cells))
