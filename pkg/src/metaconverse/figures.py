"""Desk-scale data for the three reference plots, as rows plus a gnuplot script."""
from __future__ import annotations

from fractions import Fraction

from .bounds import erasure_error_bound, mds_bound, optimize_psi, psi_threshold
from .channel import ErasureErrorParams, erasure_error_channel
from .codes.rs import ReedSolomon
from .codes.search import best_code_search
from .codes.simulate import run_trials
from .sourcecoding import best_lossy_codes, lossy_bound_uniform

FIG1_CHANNELS = (
    ("bsc", Fraction(1, 4), Fraction(0)),
    ("errors_erasures", Fraction(1, 20), Fraction(1, 5)),
    ("bec", Fraction(0), Fraction(1, 4)),
)


def fig1(ns=range(2, 7), M: int = 4, exact: bool = True):
    """Best searched code vs the closed-form bound with the threshold Psi."""
    header = ["channel", "n", "eps", "delta", "M", "best_pe", "bound", "attained"]
    notes = ["desk scale: exhaustive canonical code search replaces published code tables",
             "psi: max(0, floor((ceil(n - log2 M) - e + 1)/2))"]
    rows = []
    for name, eps, delta in FIG1_CHANNELS:
        if not exact:
            eps, delta = float(eps), float(delta)
        p = ErasureErrorParams(2, eps, delta)
        ch = erasure_error_channel(p)
        for n in ns:
            best = best_code_search(n, M, ch)
            bound = erasure_error_bound(n, p, M, psi_threshold(n, M)).value
            rows.append([name, n, eps, delta, M, best.value, bound, int(best.value == bound)])
    return header, rows, notes


def fig2(ns=(2, 4, 6), m: int = 3, eps=Fraction(1, 20), delta=Fraction(1, 4), trials: int = 100_000,
         seed: int = 1, workers: int = 1):
    """Rate-1/2 RS codes over GF(2^m): bounds and simulated error rates."""
    header = ["n", "k", "M", "bound_errors_erasures", "sim_errors_erasures_bd",
              "bound_erasures", "sim_erasures_ml"]
    q = 1 << m
    notes = [f"desk scale: GF({q}) instead of GF(32), {trials} trials per point",
             "errors-and-erasures runs use bounded-distance decoding; erasure-only runs use ML"]
    rows = []
    for i, n in enumerate(ns):
        k = n // 2
        M = q ** k
        rs = ReedSolomon(m, n, k)
        pee = ErasureErrorParams(q, eps, delta)
        per = ErasureErrorParams(q, Fraction(0) if isinstance(delta, Fraction) else 0.0, delta)
        _, bee = optimize_psi(n, pee, M)
        bmds = mds_bound(n, q, delta, M).value
        sub = seed + 2 * i
        sim_ee = run_trials(rs, erasure_error_channel(pee), "bd", trials, sub, workers)
        sim_er = run_trials(rs, erasure_error_channel(per), "ml", trials, sub + 1, workers)
        rows.append([n, k, M, bee.value, sim_ee.estimate, bmds, sim_er.estimate])
    return header, rows, notes


def fig3(ns=range(2, 13), Ds=(Fraction(11, 100), Fraction(37, 100)), M: int = 4, search_max_n: int = 12):
    """Excess distortion of the best code vs the uniform-Q bound; QP points marked."""
    header = ["n", "D", "M", "exact_ped", "bound_uniform", "qp_marker"]
    notes = [f"desk scale: exhaustive canonical search for n <= {search_max_n}; beyond that exact_ped is blank",
             "qp_marker: 1 when some M-word code is quasi-perfect for the BSC test channel"]
    rows = []
    for n in ns:
        res = best_lossy_codes(n, M, Ds) if n <= search_max_n else None
        for D in Ds:
            ped = res[Fraction(D)][1] if res else None
            qp = "" if res is None else int(res["qp_exists"])
            rows.append([n, D, M, ped, lossy_bound_uniform(n, M, D).value, qp])
    return header, rows, notes


def gnuplot_script(figure: str, csv_name: str) -> str:
    common = f"set datafile separator ','\nset logscale y\nset key outside\nset xlabel 'n'\n"
    if figure == "fig1":
        body = (f"set ylabel 'error probability'\n"
                f"plot for [c in 'bsc errors_erasures bec'] '{csv_name}' using 2:(strcol(1) eq c ? $6 : 1/0) "
                f"with points title c.' best code', \\\n"
                f"     for [c in 'bsc errors_erasures bec'] '{csv_name}' using 2:(strcol(1) eq c ? $7 : 1/0) "
                f"with lines title c.' bound'\n")
    elif figure == "fig2":
        body = (f"set ylabel 'error probability'\n"
                f"plot '{csv_name}' using 1:4 with lines title 'bound (errors+erasures)', \\\n"
                f"     '{csv_name}' using 1:5 with points title 'RS, BD decoding', \\\n"
                f"     '{csv_name}' using 1:6 with lines title 'bound (erasures)', \\\n"
                f"     '{csv_name}' using 1:7 with points title 'RS, ML decoding'\n")
    elif figure == "fig3":
        body = (f"set ylabel 'excess-distortion probability'\n"
                f"plot '{csv_name}' using 1:4 with points title 'best code', \\\n"
                f"     '{csv_name}' using 1:5 with lines title 'bound (uniform Q)', \\\n"
                f"     '{csv_name}' using 1:($6 == 1 ? $4 : 1/0) with points pt 7 title 'quasi-perfect'\n")
    else:
        raise ValueError(f"unknown figure {figure!r}")
    return f"# companion plot script for {csv_name}\n" + common + body
