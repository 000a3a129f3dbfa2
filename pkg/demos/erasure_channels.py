"""Closed-form bounds for erasure/error channels next to exhaustive-search optima."""
from fractions import Fraction

from metaconverse import ErasureErrorParams, erasure_error_bound, erasure_error_channel, optimize_psi, product_channel
from metaconverse import mds_bound, psi_threshold
from metaconverse.codes import best_code_search

M = 4
for eps, delta in ((Fraction(1, 4), Fraction(0)), (Fraction(1, 20), Fraction(1, 5)), (Fraction(0), Fraction(1, 4))):
    p = ErasureErrorParams(2, eps, delta)
    print(f"eps={eps} delta={delta}")
    for n in range(2, 6):
        best = best_code_search(n, M, product_channel(erasure_error_channel(p), n)).value
        thr = erasure_error_bound(n, p, M, psi_threshold(n, M)).value
        table, opt = optimize_psi(n, p, M)
        extra = f" mds={mds_bound(n, 2, delta, M).value}" if eps == 0 else ""
        print(f"  n={n} best={best} threshold={thr} optimized={opt.value} psi={table}{extra}")
