"""Seeded Monte Carlo estimation of block error probability.

Trials are cut into fixed blocks of ``BLOCK`` draws; block b always uses the
stream ``SeedSequence(seed, spawn_key=(b,))``.  Results therefore depend only
on (seed, trials), never on how blocks are spread over worker processes.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from ..channel import ERASURE, ProductChannel
from .rs import ERASED, ReedSolomon

BLOCK = 4096
DECODERS = ("ml", "bd")
_LOG_QUANTUM = 2.0 ** 32


@dataclass(frozen=True)
class TrialReport:
    trials: int
    failures: int
    estimate: float | None
    ci95_lo: float | None
    ci95_hi: float | None
    seed: int
    decoder: str

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def interval(self, sigmas: float = 3.0):
        """Wilson interval with the given normal-quantile half width."""
        if self.trials == 0:
            return None
        alpha = math.erfc(sigmas / math.sqrt(2))
        return proportion_confint(self.failures, self.trials, alpha=alpha, method="wilson")

    def consistent_with(self, value, sigmas: float = 3.0) -> bool:
        lo, hi = self.interval(sigmas)
        return lo <= float(value) <= hi


def _float_rows(base):
    w = base.weights.astype(np.float64)
    return w / (base.scale if base.exact else 1.0)


def _quantized_log(rows):
    """Log-likelihoods as int64 multiples of 2^-32 so equal sums tie exactly."""
    with np.errstate(divide="ignore"):
        lg = np.log(rows)
    out = np.round(lg * _LOG_QUANTUM)
    floor = -(2 ** 62) // (rows.shape[1] * 64)
    out[~np.isfinite(out)] = floor
    return out.astype(np.int64)


def _context(code, ch, decoder):
    base = ch.base if isinstance(ch, ProductChannel) else ch
    rows = _float_rows(base)
    cum = np.cumsum(rows, axis=1)
    cum[:, -1] = 1.0
    ctx = {"decoder": decoder, "cum": cum}
    if isinstance(code, ReedSolomon):
        ctx["rs"] = (code.m, code.n, code.k)
        n = code.n
    else:
        words = np.array(list(code), dtype=np.int64)
        n = words.shape[1]
        ctx["words"] = np.array([[base.input_index(s) for s in w] for w in words.tolist()], dtype=np.int64)
    ctx["n"] = n
    if decoder == "ml":
        if "rs" in ctx:
            ctx["words"] = code.codeword_array()
        ctx["loglik"] = _quantized_log(rows)
    else:
        if "rs" not in ctx:
            raise ValueError("bounded-distance decoding needs a Reed-Solomon code")
        outs = list(base.outputs)
        ctx["out_symbol"] = np.array([ERASED if o == ERASURE else int(o) for o in outs], dtype=np.int64)
    return ctx


def _run_block(ctx, seed, trials, b) -> int:
    count = min(BLOCK, trials - b * BLOCK)
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
    n = ctx["n"]
    if "words" in ctx and ctx["decoder"] == "ml":
        words = ctx["words"]
        sent = rng.integers(len(words), size=count)
        x = words[sent]
    else:
        rs = ReedSolomon(*ctx["rs"])
        msgs = rng.integers(rs.q, size=(count, rs.k))
        x = np.zeros((count, n), dtype=np.int64)
        for j in range(rs.k):
            x ^= rs.gf.mul_table[msgs[:, j][:, None], rs.generator[j][None, :]]
    u = rng.random((count, n))
    y = (ctx["cum"][x] <= u[..., None]).sum(axis=-1)
    if ctx["decoder"] == "ml":
        words, ll = ctx["words"], ctx["loglik"]
        score = np.zeros((count, len(words)), dtype=np.int64)
        for i in range(n):
            score += ll[words[:, i]][:, y[:, i]].T
        return int((score.argmax(axis=1) != sent).sum())
    sym = ctx["out_symbol"][y]
    failures = 0
    for t in range(count):
        res = rs.decode(sym[t].tolist())
        if not res.ok or tuple(res.codeword) != tuple(x[t].tolist()):
            failures += 1
    return failures


def run_trials(code, ch, decoder: str = "ml", trials: int = 10_000, seed: int = 0,
               workers: int = 1) -> TrialReport:
    """Estimate the block error probability of ``code`` over ``ch``.

    ``decoder`` is "ml" (exhaustive maximum likelihood, lowest index on
    ties) or "bd" (errors-and-erasures bounded distance, RS codes only).
    The message is uniform; a failure is any decoded message != sent.
    """
    if decoder not in DECODERS:
        raise ValueError(f"decoder must be one of {DECODERS}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    seed = int(seed)
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    if trials == 0:
        return TrialReport(0, 0, None, None, None, seed, decoder)
    ctx = _context(code, ch, decoder)
    blocks = range(math.ceil(trials / BLOCK))
    task = partial(_run_block, ctx, seed, trials)
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(task, blocks))
    else:
        failures = sum(map(task, blocks))
    lo, hi = proportion_confint(failures, trials, alpha=0.05, method="wilson")
    return TrialReport(trials, failures, failures / trials, float(lo), float(hi), seed, decoder)
