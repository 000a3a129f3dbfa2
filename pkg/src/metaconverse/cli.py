"""Command-line front end: bound, verify, simulate, search, figure.

Exit codes: 0 success, 2 configuration error, 3 enumeration budget exceeded,
4 attainment precondition not met (e.g. a non-symmetric channel).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import figures
from .bounds import (
    erasure_error_bound, jscc_bound, mds_bound, metaconverse_symmetric, optimize_psi, psi_threshold, psi_mds,
)
from .channel import (
    Channel, ErasureErrorParams, erasure_error_channel, is_symmetric, product_channel, qstar_erasure,
    uniform_output,
)
from .codes.core import ml_error_probability, read_code, format_code
from .codes.rs import ReedSolomon
from .codes.search import best_code_search
from .codes.simulate import run_trials
from .geometry import classify_qp
from .numeric import BudgetExceeded, HypothesisViolation, parse_prob, render
from .sourcecoding import lossy_bound_code, lossy_bound_uniform

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_HYPOTHESIS = 0, 2, 3, 4
SWEEP_COLUMNS = ["n", "q", "eps", "delta", "M", "bound_name", "value", "psi_table", "gamma"]
DEFAULTS = {"mode": "auto", "workers": 1, "trials": 100_000, "decoder": "ml", "psi": "threshold", "q": 2,
            "family": "erasure_error", "qfamily": "auto"}


class ConfigError(Exception):
    pass


# --------------------------------------------------------------------------
# Parsing helpers

def parse_kv(text: str) -> list[tuple[str, str]]:
    """key = value lines; '#' starts a comment; repeated keys are kept in order."""
    items = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {no}: expected 'key = value', got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        items.append((key.replace("-", "_"), val))
    return items


def parse_range(text) -> list[int]:
    """'3', '2..6' or '2,4,6'."""
    text = str(text)
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ConfigError(f"bad integer range {text!r}") from None


def _exact_mode(mode, texts) -> bool:
    if mode == "rational":
        return True
    if mode == "float":
        return False
    if mode != "auto":
        raise ConfigError(f"mode must be rational, float or auto, got {mode!r}")
    return any("/" in str(t) for t in texts if t is not None)


def _prob(text, exact, name):
    try:
        return parse_prob(str(text), exact)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{name}: cannot parse probability {text!r}") from None


def load_channel_file(path, mode):
    """Channel description file -> (single-letter channel, params or None, n or None)."""
    try:
        items = parse_kv(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"channel: {exc}") from None
    kv = dict(items)
    kind = kv.get("kind")
    n = int(kv["n"]) if "n" in kv else None
    if kind == "erasure_error":
        for key in ("q", "eps", "delta"):
            if key not in kv:
                raise ConfigError(f"channel: erasure_error needs '{key}'")
        exact = _exact_mode(mode, [kv["eps"], kv["delta"]])
        p = ErasureErrorParams(int(kv["q"]), _prob(kv["eps"], exact, "eps"), _prob(kv["delta"], exact, "delta"))
        return letter_channel(p), p, n
    if kind == "matrix":
        rows = [[t for t in val.replace(",", " ").split()] for key, val in items if key == "row"]
        if not rows:
            raise ConfigError("channel: matrix kind needs 'row =' lines")
        exact = _exact_mode(mode, [t for r in rows for t in r])
        vals = [[_prob(t, exact, "row") for t in r] for r in rows]
        inputs = kv["inputs"].replace(",", " ").split() if "inputs" in kv else None
        outputs = kv["outputs"].replace(",", " ").split() if "outputs" in kv else None
        return Channel.from_rows(vals, inputs, outputs, "rational" if exact else "float"), None, n
    raise ConfigError(f"channel: 'kind' must be matrix or erasure_error, got {kind!r}")


def letter_channel(p: ErasureErrorParams) -> Channel:
    """Erasure/error channel; the erasure output is dropped when it can never occur."""
    if p.delta:
        return erasure_error_channel(p)
    rows = [[p.correct if y == x else p.flip for y in range(p.q)] for x in range(p.q)]
    return Channel.from_rows(rows, range(p.q), range(p.q), "rational" if p.exact else "float", params=p)


def resolve_channel(args, need_n=True):
    inline = any(getattr(args, k, None) is not None for k in ("eps", "delta"))
    if args.channel and inline:
        raise ConfigError("channel: give either --channel or inline --eps/--delta, not both")
    if args.channel:
        ch, p, n = load_channel_file(args.channel, args.mode)
        ns = parse_range(args.n) if args.n is not None else ([n] if n is not None else None)
    else:
        if args.eps is None and args.delta is None:
            raise ConfigError("channel: missing --channel or --eps/--delta")
        eps = "0" if args.eps is None else args.eps
        delta = "0" if args.delta is None else args.delta
        exact = _exact_mode(args.mode, [eps, delta])
        p = ErasureErrorParams(int(args.q), _prob(eps, exact, "eps"), _prob(delta, exact, "delta"))
        ch = letter_channel(p)
        ns = parse_range(args.n) if args.n is not None else None
    if need_n and not ns:
        raise ConfigError("n: block length is required")
    return ch, p, ns


# --------------------------------------------------------------------------
# Output

def _cell(v):
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (Fraction, float)):
        return render(v)
    return "" if v is None else str(v)


def write_csv(out, header, rows, meta):
    for line in meta:
        out.write(f"# {line}\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])


def _emit(args, text: str):
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _psi_text(table):
    return ";".join(str(v) for v in table)


# --------------------------------------------------------------------------
# Commands

def cmd_bound(args):
    fam = args.family
    rows, meta = [], [f"family={fam}", f"mode={args.mode}"]
    M = _need_int(args.M, "M") if fam not in ("jscc", "lossy_code") else None
    if fam in ("lossy_uniform", "lossy_code"):
        if args.D is None:
            raise ConfigError("D: required for lossy bounds")
        D = Fraction(str(args.D))
        meta.append(f"D={args.D}")
        if fam == "lossy_code":
            code = read_code(_need(args.code, "code"))
            rep = lossy_bound_code(code, D)
            rows.append([code.n, 2, "", "", code.M, rep.name, rep.value, "", ""])
        else:
            for n in parse_range(_need(args.n, "n")):
                rep = lossy_bound_uniform(n, M, D)
                rows.append([n, 2, "", "", M, rep.name, rep.value, "", ""])
    elif fam == "mds":
        exact = _exact_mode(args.mode, [args.delta])
        delta = _prob(_need(args.delta, "delta"), exact, "delta")
        q = int(args.q)
        for n in parse_range(_need(args.n, "n")):
            rep = mds_bound(n, q, delta, M)
            rows.append([n, q, 0, delta, M, rep.name, rep.value, _psi_text(psi_mds(n, q, M)), ""])
    elif fam == "erasure_error":
        _, p, ns = resolve_channel(args)
        if p is None:
            raise ConfigError("family erasure_error needs an erasure_error channel")
        for n in ns:
            table, rep = _psi_choice(args.psi, n, p, M)
            rows.append([n, p.q, p.eps, p.delta, M, rep.name, rep.value, _psi_text(table), rep.witness["gamma"]])
    elif fam == "metaconverse":
        ch, p, ns = resolve_channel(args)
        for n in ns:
            block = product_channel(ch, n)
            rep = metaconverse_symmetric(block, uniform_output(block), M)
            rows.append([n, ch.n_inputs, _attr(p, "eps"), _attr(p, "delta"), M, rep.name, rep.value, "",
                         rep.witness["gamma"]])
    elif fam == "jscc":
        ch, p, ns = resolve_channel(args)
        src = [_prob(t, _exact_mode(args.mode, args.source.split(",")), "source")
               for t in _need(args.source, "source").split(",")]
        for n in ns:
            block = product_channel(ch, n) if n > 1 else ch
            rep = jscc_bound(src, block, uniform_output(block))
            rows.append([n, ch.n_inputs, _attr(p, "eps"), _attr(p, "delta"), len(src), rep.name, rep.value,
                         "", rep.witness["gamma"]])
    else:
        raise ConfigError(f"family: unknown bound family {fam!r}")
    buf = io.StringIO()
    write_csv(buf, SWEEP_COLUMNS, rows, meta)
    _emit(args, buf.getvalue())


def _psi_choice(spec, n, p, M):
    if spec in ("threshold", "eq39"):
        table = psi_threshold(n, M, p.q)
        return table, erasure_error_bound(n, p, M, table)
    if spec == "opt":
        return optimize_psi(n, p, M, "per_e")
    if spec in ("threshold_opt", "eq39opt"):
        return optimize_psi(n, p, M, "threshold")
    if spec == "mds":
        table = psi_mds(n, p.q, M)
        return table, erasure_error_bound(n, p, M, table)
    try:
        table = [int(t) for t in spec.split(";")]
    except ValueError:
        raise ConfigError(f"psi: expected threshold, opt, threshold_opt, mds or 'a;b;c', got {spec!r}") from None
    return table, erasure_error_bound(n, p, M, table)


def _attr(p, name):
    return getattr(p, name) if p is not None else ""


def _need(v, name):
    if v is None:
        raise ConfigError(f"{name}: required")
    return v


def _need_int(v, name):
    try:
        return int(_need(v, name))
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected an integer, got {v!r}") from None


def cmd_verify(args):
    code = read_code(_need(args.code, "code"))
    if args.n is None:
        args.n = str(code.n)
    ch, p, ns = resolve_channel(args)
    if ns != [code.n]:
        raise ConfigError(f"n: channel block length {ns} does not match the code length {code.n}")
    if not is_symmetric(ch):
        raise HypothesisViolation("channel is not symmetric: attainment conditions do not apply")
    block = product_channel(ch, code.n)
    qfam = args.qfamily
    if qfam == "auto":
        qfam = "mds" if p is not None and p.eps == 0 and p.delta > 0 else "uniform"
    if qfam == "uniform":
        Q = uniform_output(block)
    elif qfam in ("mds", "qstar"):
        if p is None:
            raise ConfigError("qfamily: mds/qstar laws need an erasure_error channel")
        psi = psi_mds(code.n, p.q, code.M) if qfam == "mds" else psi_threshold(code.n, code.M, p.q)
        Q, _ = qstar_erasure(code.n, p, psi)
    else:
        raise ConfigError(f"qfamily: unknown auxiliary family {qfam!r}")
    cls = classify_qp(code, block, Q)
    pe = ml_error_probability(code, block)
    bound = metaconverse_symmetric(block, Q, code.M)
    report = {
        "verdict": cls.verdict,
        "witness_gamma": render(cls.witness_gamma) if cls.witness_gamma is not None else None,
        "witness_Q": qfam,
        "eta": render(cls.radii.eta),
        "nu": render(cls.radii.nu),
        "pe": render(pe),
        "bound": render(bound.value),
        "attained": pe == bound.value,
    }
    _emit(args, json.dumps(report, indent=2) + "\n")


def cmd_simulate(args):
    trials = _need_int(args.trials, "trials")
    if trials > 0 and args.seed is None:
        raise ConfigError("seed: required when trials > 0")
    seed = int(args.seed) if args.seed is not None else 0
    if args.rs:
        try:
            m, n, k = (int(t) for t in args.rs.split(","))
        except ValueError:
            raise ConfigError(f"rs: expected m,n,k, got {args.rs!r}") from None
        code, M = ReedSolomon(m, n, k), (1 << m) ** k
        if args.q is None or int(args.q) == DEFAULTS["q"]:
            args.q = 1 << m
    else:
        code = read_code(_need(args.code, "code"))
        n, M = code.n, code.M
    if args.n is None:
        args.n = str(n)
    ch, p, _ = resolve_channel(args)
    rep = run_trials(code, ch, args.decoder, trials, seed, int(args.workers))
    out = json.loads(rep.to_json())
    if p is not None:
        if p.eps == 0:
            b = mds_bound(n, p.q, p.delta, M)
        else:
            _, b = optimize_psi(n, p, M)
        out["bound"] = render(b.value)
        out["bound_name"] = b.name
    _emit(args, json.dumps(out) + "\n")


def cmd_search(args):
    ch, _, ns = resolve_channel(args)
    M = _need_int(args.M, "M")
    res = best_code_search(ns[0], M, ch)
    text = format_code(res.code) + f"# pe={render(res.value)} exact={int(res.exact)} examined={res.examined}\n"
    _emit(args, text)


def cmd_figure(args):
    name = args.figure
    workers = int(args.workers)
    if name == "fig1":
        ns = parse_range(args.n) if args.n else range(2, 7)
        header, rows, notes = figures.fig1(ns, int(args.M or 4))
    elif name == "fig2":
        ns = parse_range(args.n) if args.n else (2, 4, 6)
        seed = int(args.seed) if args.seed is not None else 1
        header, rows, notes = figures.fig2(ns, trials=int(args.trials), seed=seed, workers=workers)
    elif name == "fig3":
        ns = parse_range(args.n) if args.n else range(2, 13)
        if max(ns) > 20:
            raise ConfigError("n: fig3 is limited to n <= 20")
        header, rows, notes = figures.fig3(ns, M=int(args.M or 4))
    else:
        raise ConfigError(f"figure: unknown figure {name!r}")
    buf = io.StringIO()
    write_csv(buf, header, rows, [f"figure={name}", *notes])
    if args.output:
        out = Path(args.output)
        out.write_text(buf.getvalue())
        out.with_suffix(".gp").write_text(figures.gnuplot_script(name, out.name))
    else:
        sys.stdout.write(buf.getvalue())


COMMANDS = {"bound": cmd_bound, "verify": cmd_verify, "simulate": cmd_simulate, "search": cmd_search,
            "figure": cmd_figure}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metaconverse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value file; command-line flags take precedence")
        sp.add_argument("--mode", help="rational | float | auto (fractions select rational)")
        sp.add_argument("--output", "-o", help="output path (default: stdout)")
        sp.add_argument("--channel", help="channel description file")
        sp.add_argument("--q", help="alphabet size for inline erasure/error channels")
        sp.add_argument("--eps", help="flip probability")
        sp.add_argument("--delta", help="erasure probability")
        sp.add_argument("--n", help="block length: 3, 2..6 or 2,4,6")
        sp.add_argument("--M", help="number of codewords")
        sp.add_argument("--seed", help="unsigned 64-bit seed")
        sp.add_argument("--workers", help="worker processes for simulation")
        return sp

    b = common(sub.add_parser("bound", help="evaluate lower bounds, one CSV row per point"))
    b.add_argument("--family", help="erasure_error | mds | metaconverse | jscc | lossy_uniform | lossy_code")
    b.add_argument("--psi", help="threshold (alias eq39) | opt | threshold_opt | mds | explicit 'a;b;...'")
    b.add_argument("--D", help="distortion threshold for lossy bounds")
    b.add_argument("--code", help="code file (lossy_code)")
    b.add_argument("--source", help="comma-separated source probabilities (jscc)")

    v = common(sub.add_parser("verify", help="classify a code and compare its exact error with the bound"))
    v.add_argument("--code", help="code file")
    v.add_argument("--qfamily", help="auto | uniform | mds | qstar")

    s = common(sub.add_parser("simulate", help="Monte Carlo error rate as JSON"))
    s.add_argument("--code", help="code file")
    s.add_argument("--rs", help="Reed-Solomon parameters m,n,k")
    s.add_argument("--decoder", help="ml | bd")
    s.add_argument("--trials", help="number of trials")

    c = common(sub.add_parser("search", help="exhaustive best binary code search"))
    del c

    f = common(sub.add_parser("figure", help="desk-scale figure data (CSV + plot script)"))
    f.add_argument("figure", help="fig1 | fig2 | fig3")
    f.add_argument("--trials", help="trials per simulated point (fig2)")
    return parser


def _apply_config(args):
    if getattr(args, "config", None):
        try:
            items = parse_kv(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError(f"config: {exc}") from None
        for key, val in items:
            if not hasattr(args, key):
                raise ConfigError(f"config: unknown key {key!r}")
            if getattr(args, key) is None:
                setattr(args, key, val)
    for key, val in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, val)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisViolation as exc:
        print(f"error: hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
