"""End-to-end acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line (shown in the pytest summary, or
printed directly when this file is run as a script).
"""
import itertools
import math
import random
import sys
import time
from fractions import Fraction as F

import pytest

from metaconverse import (
    Channel, ErasureErrorParams, alpha_beta, alpha_beta_oracle, bec, bsc, classify_qp, erasure_error_bound,
    erasure_error_channel, jscc_bound, fixed_gamma_bound, mds_bound, metaconverse_symmetric, optimize_psi,
    product_channel, psi_threshold, uniform_output,
)
from metaconverse import cli
from metaconverse.codes import Codebook, ReedSolomon, best_code_search, map_error_probability
from metaconverse.codes import ml_error_probability, run_trials
from metaconverse.codes.search import _distinct_rows, columns_to_words, enumerate_columns
from metaconverse.sourcecoding import best_lossy_codes, lossy_bound_uniform

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

HAMMING_G = [(1, 0, 0, 0, 1, 1, 0), (0, 1, 0, 0, 1, 0, 1), (0, 0, 1, 0, 0, 1, 1), (0, 0, 0, 1, 1, 1, 1)]


def hamming74():
    return Codebook([tuple(sum(m[i] * HAMMING_G[i][j] for i in range(4)) % 2 for j in range(7))
                     for m in itertools.product((0, 1), repeat=4)], 2)


def record(k, ok, detail, started):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - started:.1f}s) {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def brute_force_ml_error(words, eps):
    """Independent oracle: 1 - (1/M) sum_y max_m W(y | c_m) by direct enumeration."""
    n = len(words[0])
    total = F(0)
    for y in itertools.product((0, 1), repeat=n):
        best = F(0)
        for c in words:
            d = sum(a != b for a, b in zip(c, y))
            best = max(best, eps ** d * (1 - eps) ** (n - d))
        total += best
    return 1 - total / len(words)


def test_criterion_1_np_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(20241)
    betas = [F(0), F(1, 7), F(1, 3), F(1, 2), F(1)]
    bad = 0
    for _ in range(500):
        k = rng.randint(1, 12)
        w0 = [rng.randint(0, 9) for _ in range(k)]
        w1 = [rng.randint(0, 9) for _ in range(k)]
        w0[rng.randrange(k)] += 1
        w1[rng.randrange(k)] += 1
        P0 = [F(v, sum(w0)) for v in w0]
        P1 = [F(v, sum(w1)) for v in w1]
        for b in betas:
            if alpha_beta(P0, P1, b).alpha != alpha_beta_oracle(P0, P1, b):
                bad += 1
    record(1, bad == 0, f"500 pairs x 5 budgets, mismatches={bad}", t0)


def test_criterion_2_hamming_perfect_attainment():
    t0 = time.perf_counter()
    code = hamming74()
    details, ok = [], True
    for eps in (F(1, 10), F(1, 4)):
        ch = product_channel(bsc(eps), 7)
        Q = uniform_output(ch)
        pe = ml_error_probability(code, ch)
        cls = classify_qp(code, ch, Q)
        mc = metaconverse_symmetric(ch, Q, 16).value
        l3 = fixed_gamma_bound(ch, Q, 16, cls.witness_gamma).value
        oracle = brute_force_ml_error(code.words, eps)
        ok &= cls.verdict == "perfect" and pe == mc == l3 == oracle
        details.append(f"eps={eps}: Pe={pe}")
    closed = 1 - F(3, 4) ** 7 - 7 * F(1, 4) * F(3, 4) ** 6
    quarter = ml_error_probability(code, product_channel(bsc(F(1, 4)), 7))
    ok &= quarter == closed
    record(2, ok, "; ".join(details), t0)


def test_criterion_3_quasi_perfect_iff_equality():
    t0 = time.perf_counter()
    eps = F(1, 4)
    counts = {"checked": 0, "equal": 0, "violations": 0}
    for n in range(1, 5):
        ch = product_channel(bsc(eps), n)
        Q = uniform_output(ch)
        for M in (2, 4):
            if M > 2 ** n:
                continue
            bound = metaconverse_symmetric(ch, Q, M).value
            for cols in enumerate_columns(n, M, True):
                if not _distinct_rows(cols, M):
                    continue
                code = Codebook(columns_to_words(cols, M), 2)
                pe = ml_error_probability(code, ch)
                qp = classify_qp(code, ch, Q).quasi_perfect
                counts["checked"] += 1
                counts["equal"] += pe == bound
                if qp != (pe == bound) or pe < bound:
                    counts["violations"] += 1
    record(3, counts["violations"] == 0 and counts["checked"] > 0, str(counts), t0)


def test_criterion_4_bsc_search_matches_closed_form():
    t0 = time.perf_counter()
    p = ErasureErrorParams(2, F(1, 4), F(0))
    rows = []
    for n in range(2, 7):
        res = best_code_search(n, 4, product_channel(bsc(F(1, 4)), n))
        bound = erasure_error_bound(n, p, 4, psi_threshold(n, 4, 2)).value
        rows.append((n, res.exact, res.value, bound))
    ok = all(ex and pe == b for _, ex, pe, b in rows)
    record(4, ok, " ".join(f"n={n}:{pe}{'=' if pe == b else '!='}{b}" for n, _, pe, b in rows), t0)


def test_criterion_5_mds_attainment():
    t0 = time.perf_counter()
    d = F(1, 4)
    parity = Codebook([(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)], 2)
    b3 = mds_bound(3, 2, d, 4).value
    pe3 = ml_error_probability(parity, product_channel(bec(d), 3))
    uncoded = Codebook(list(itertools.product((0, 1), repeat=2)), 2)
    b2 = mds_bound(2, 2, d, 4).value
    pe2 = ml_error_probability(uncoded, product_channel(bec(d), 2))
    rs_bound = mds_bound(7, 8, 0.25, 512).value
    ch = erasure_error_channel(ErasureErrorParams(8, 0.0, 0.25))
    rep = run_trials(ReedSolomon(3, 7, 3), ch, "ml", 100_000, seed=20240607, workers=4)
    ok = b3 == F(82031250, 10 ** 9) == pe3 and b2 == pe2 and rep.consistent_with(rs_bound, 3)
    record(5, ok, f"n=3 {b3}, n=2 {b2}=={pe2}, RS MC {rep.estimate} vs {rs_bound:.6g} "
                  f"3-sigma {tuple(round(v, 6) for v in rep.interval(3))}", t0)


def test_criterion_6_errors_erasures_gap():
    t0 = time.perf_counter()
    p = ErasureErrorParams(8, 0.05, 0.25)
    _, bound = optimize_psi(7, p, 512)
    rep = run_trials(ReedSolomon(3, 7, 3), erasure_error_channel(p), "bd", 100_000, seed=20240608, workers=8)
    lo, hi = rep.interval(3)
    ok = rep.estimate >= bound.value and hi >= bound.value
    record(6, ok, f"BD estimate {rep.estimate} >= bound {bound.value:.6g} (3-sigma upper {hi:.6g})", t0)


def _circulant(rng, k):
    w = [rng.randint(1, 9) for _ in range(k)]
    base = [F(v, sum(w)) for v in w]
    return Channel.from_rows([base[-x:] + base[:-x] for x in range(k)], mode="rational")


def test_criterion_7_jscc():
    t0 = time.perf_counter()
    src = [F(1, 2), F(3, 10), F(1, 5)]
    ch = Channel.from_rows([[F(1), F(0)], [F(0), F(1)]], mode="rational")
    b = jscc_bound(src, ch, uniform_output(ch)).value
    opt = min(map_error_probability([(x,) for x in enc], src, ch)
              for enc in itertools.product(range(2), repeat=3))
    rng = random.Random(77)
    mism = 0
    for _ in range(20):
        k, M = rng.randint(2, 4), rng.randint(2, 3)
        c = _circulant(rng, k)
        block = product_channel(c, 2)
        Q = uniform_output(block)
        if jscc_bound([F(1, M)] * M, block, Q).value != metaconverse_symmetric(block, Q, M).value:
            mism += 1
    record(7, b == F(1, 5) == opt and mism == 0, f"bound={b} MAP optimum={opt}; reduction mismatches={mism}/20", t0)


def test_criterion_8_lossy_dichotomy():
    t0 = time.perf_counter()
    lo_d, hi_d = F(11, 100), F(37, 100)
    eq_lo, eq_hi, qp_ns = set(), set(), set()
    for n in range(2, 13):
        res = best_lossy_codes(n, 4, [lo_d, hi_d])
        if res[lo_d][1] == lossy_bound_uniform(n, 4, lo_d).value:
            eq_lo.add(n)
        if res[hi_d][1] == lossy_bound_uniform(n, 4, hi_d).value:
            eq_hi.add(n)
        if res["qp_exists"]:
            qp_ns.add(n)
    # frozen from an independent enumeration of Hamming quasi-perfect (n, 4) codes
    expected_qp = {2, 3, 4, 5, 6, 8}
    ok = eq_lo == set(range(2, 13)) and eq_hi == qp_ns == expected_qp
    record(8, ok, f"D=0.11 equality n={sorted(eq_lo)}; D=0.37 equality n={sorted(eq_hi)}; "
                  f"quasi-perfect n={sorted(qp_ns)}", t0)


def _run(argv, path):
    assert cli.main([*argv, "--output", str(path)]) == 0
    return path.read_bytes()


def test_criterion_9_determinism(tmp_path):
    t0 = time.perf_counter()
    outputs = {}
    fig2 = ["figure", "fig2", "--trials", "12000", "--seed", "11"]
    sim = ["simulate", "--rs", "3,7,3", "--eps", "0.05", "--delta", "0.25", "--decoder", "bd",
           "--trials", "20000", "--seed", "99"]
    for name, argv in {"fig1": ["figure", "fig1", "--n", "2..4"], "fig2": fig2, "simulate": sim}.items():
        runs = [_run([*argv, "--workers", w], tmp_path / f"{name}{i}.csv")
                for i, w in enumerate(("1", "1", "8"))]
        outputs[name] = len(set(runs)) == 1
    record(9, all(outputs.values()), str(outputs), t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
