"""Command-line front end.

Subcommands: gen, means, strong-means, blocks, block-means, w1norm,
density, check-thm1, check-thm2, demo-counterexample.

Generators: constant (--value), alternating, counterexample, a_s (--s),
paper-example, file (--path), random (--seed, --bound; the table is drawn
as long as the command needs).

Exit codes: 0 success, 1 parameter error (the message names the offending
flag), 2 runtime error.  Output goes to --out when given, else to stdout;
a relative --out (and --emit) path is resolved against $CESARO_OUT_DIR
when that variable is set.  Identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
from pathlib import Path

from . import __version__, analysis, density, seqcore, summability
from .blocks import GeometricPartition
from .errors import DomainError, HorizonError, ParameterError
from .summability import _fmt

GENERATORS = (
    "constant", "alternating", "counterexample", "a_s", "paper-example",
    "file", "random",
)


class _Parser(argparse.ArgumentParser):
    # argparse would exit(2) on bad flags; route through ParameterError so
    # the documented exit code 1 applies and the flag name stays in the text
    def error(self, message):
        raise ParameterError(message)


def _flag(cond: bool, flag: str, message: str) -> None:
    if not cond:
        raise ParameterError(f"{flag}: {message}")


def _check_n(args, minimum: int = 1) -> int:
    _flag(args.n is not None, "--n", "is required")
    _flag(args.n >= minimum, "--n", f"must be >= {minimum}, got {args.n}")
    return args.n


def _check_alpha(alpha: float) -> float:
    _flag(alpha is not None, "--alpha", "is required")
    _flag(alpha > 1.0, "--alpha", f"must be > 1, got {alpha!r}")
    return alpha


def _parse_base(token: str) -> float:
    if token.strip().lower() == "e":
        return math.e
    try:
        return float(token)
    except ValueError:
        raise ParameterError(f"--bases: not a number: {token!r}") from None


def _build_source(args, horizon: int) -> seqcore.SequenceSource:
    name = args.gen
    if name == "constant":
        _flag(args.value is not None, "--value", "is required for --gen constant")
        return seqcore.constant(args.value)
    if name == "alternating":
        return seqcore.alternating()
    if name == "counterexample":
        return seqcore.counterexample()
    if name == "a_s":
        _flag(args.s is not None, "--s", "is required for --gen a_s")
        _flag(0.0 <= args.s <= 1.0, "--s", f"must lie in [0, 1], got {args.s!r}")
        return seqcore.a_s_set(args.s).source()
    if name == "paper-example":
        return seqcore.paper_example_set().source()
    if name == "file":
        _flag(args.path is not None, "--path", "is required for --gen file")
        try:
            return seqcore.from_file(args.path)
        except OSError as e:
            raise ParameterError(f"--path: cannot read {args.path}: {e}") from None
    if name == "random":
        _flag(args.seed is not None, "--seed", "is required for --gen random")
        _flag(args.bound is not None, "--bound", "is required for --gen random")
        _flag(args.bound > 0, "--bound", f"must be > 0, got {args.bound!r}")
        return seqcore.random_bounded(args.seed, args.bound, horizon)
    raise ParameterError(f"--gen: unknown generator {name!r}")


def _build_set(args, horizon: int) -> seqcore.IndicatorSet:
    if args.gen == "a_s":
        _flag(args.s is not None, "--s", "is required for --gen a_s")
        _flag(0.0 <= args.s <= 1.0, "--s", f"must lie in [0, 1], got {args.s!r}")
        return seqcore.a_s_set(args.s)
    if args.gen == "paper-example":
        return seqcore.paper_example_set()
    # any other generator must evaluate to 0/1 over the scanned range
    return seqcore.from_source(_build_source(args, horizon))


def _resolve_path(raw: str) -> Path:
    path = Path(raw)
    if not path.is_absolute():
        base = os.environ.get("CESARO_OUT_DIR")
        if base:
            path = Path(base) / path
    return path


def _open_out(args):
    if getattr(args, "out", None) is None:
        return contextlib.nullcontext(sys.stdout)
    return open(_resolve_path(args.out), "w", encoding="utf-8", newline="\n")


def _emit_json(doc: dict, fp) -> None:
    json.dump(doc, fp, indent=2)
    fp.write("\n")

def _json_only(args) -> None:
    _flag(args.format == "json", "--format", "this report is JSON only")


# ---------------------------------------------------------------------------
# handlers


def _cmd_gen(args, fp) -> None:
    n = _check_n(args)
    src = _build_source(args, n)
    ctx = contextlib.nullcontext(fp)
    if args.emit is not None:
        ctx = open(_resolve_path(args.emit), "w", encoding="utf-8", newline="\n")
    with ctx as target:
        target.write(f"# generator: {src.label}\n")
        for _, vals in seqcore.iter_chunks(src, 1, n + 1):
            target.write("".join(f"{_fmt(v)}\n" for v in vals))


def _cmd_means(args, fp) -> None:
    n = _check_n(args)
    src = _build_source(args, n)
    series = summability.cesaro_means(src, n)
    if args.format == "json":
        _emit_json(series.to_json_dict(), fp)
    else:
        series.to_csv(fp)


def _cmd_strong_means(args, fp) -> None:
    n = _check_n(args)
    src = _build_source(args, n)
    series = summability.strong_cesaro_means(src, args.l, n)
    if args.format == "json":
        _emit_json(series.to_json_dict(), fp)
    else:
        series.to_csv(fp)


def _cmd_blocks(args, fp) -> None:
    alpha = _check_alpha(args.alpha)
    _flag(args.j is not None, "--j", "is required")
    _flag(args.j >= 1, "--j", f"must be >= 1, got {args.j}")
    part = GeometricPartition(alpha)
    rows = [part.bounds(j) for j in range(1, args.j + 1)]
    if args.format == "json":
        _emit_json(
            {
                "schema": "cesaro.blocks/1",
                "alpha": alpha,
                "blocks": [
                    {"j": j, "lo": lo, "hi": hi, "weight": hi - lo}
                    for j, (lo, hi) in enumerate(rows, 1)
                ],
            },
            fp,
        )
    else:
        fp.write("j,lo,hi,weight\n")
        for j, (lo, hi) in enumerate(rows, 1):
            fp.write(f"{j},{lo},{hi},{hi - lo}\n")


def _cmd_block_means(args, fp) -> None:
    alpha = _check_alpha(args.alpha)
    _flag(args.j is not None, "--j", "is required")
    _flag(args.j >= 1, "--j", f"must be >= 1, got {args.j}")
    part = GeometricPartition(alpha)
    horizon = part.bounds(args.j)[1] - 1
    src = _build_source(args, max(horizon, 1))
    series = summability.block_means(src, alpha, args.j, mode=args.mode)
    if args.format == "json":
        _emit_json(series.to_json_dict(), fp)
    else:
        series.to_csv(fp)


def _cmd_w1norm(args, fp) -> None:
    _flag(args.m is not None, "--m", "is required")
    _flag(args.m >= 1, "--m", f"must be >= 1, got {args.m}")
    src = _build_source(args, (1 << (args.m + 1)) - 1)
    per_block = summability.w1_block_abs_means(src, args.m)
    sup = 0.0
    rows = []
    for m, mean_abs in enumerate(per_block, 1):
        sup = max(sup, float(mean_abs))
        rows.append((m, float(mean_abs), sup))
    if args.format == "json":
        _emit_json(
            {
                "schema": "cesaro.w1norm/1",
                "generator": src.label,
                "M": args.m,
                "value": sup,
                "blocks": [
                    {"m": m, "abs_mean": v, "running_sup": s} for m, v, s in rows
                ],
            },
            fp,
        )
    else:
        fp.write("m,abs_mean,running_sup\n")
        for m, v, s in rows:
            fp.write(f"{m},{_fmt(v)},{_fmt(s)}\n")


def _cmd_density(args, fp) -> None:
    n = _check_n(args, minimum=2)
    _flag(0.0 < args.window <= 1.0, "--window", f"must lie in (0, 1], got {args.window!r}")
    iset = _build_set(args, n)
    try:
        report = density.density_band(iset, n, args.window)
    except ParameterError as e:
        raise ParameterError(f"--gen: {e}") from None
    if args.format == "json":
        _emit_json(report.to_json_dict(), fp)
    else:
        report.to_csv(fp)


def _check_tol_window(args) -> None:
    _flag(args.tol > 0, "--tol", f"must be > 0, got {args.tol!r}")
    _flag(0.0 < args.window <= 1.0, "--window", f"must lie in (0, 1], got {args.window!r}")


def _cmd_check_thm1(args, fp) -> None:
    n = _check_n(args)
    _check_tol_window(args)
    _json_only(args)
    bases = [_parse_base(tok) for tok in args.bases.split(",") if tok.strip()]
    _flag(bool(bases), "--bases", "needs at least one base")
    for a in bases:
        _flag(a > 1.0, "--bases", f"every base must be > 1, got {a!r}")
    src = _build_source(args, n)
    report = analysis.check_theorem1(
        src, bases, n, j_count=args.j, tol=args.tol, window_fraction=args.window
    )
    _emit_json(report.to_json_dict(), fp)


def _cmd_check_thm2(args, fp) -> None:
    n = _check_n(args)
    alpha = _check_alpha(args.alpha)
    _check_tol_window(args)
    _json_only(args)
    src = _build_source(args, n)
    report = analysis.check_theorem2(
        src, alpha, n, j_count=args.j, tol=args.tol, window_fraction=args.window
    )
    _emit_json(report.to_json_dict(), fp)


def _cmd_demo(args, fp) -> None:
    n = _check_n(args, minimum=1 << 10)
    _json_only(args)
    _emit_json(analysis.counterexample_demo(n).to_json_dict(), fp)


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="cesaro", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"cesaro {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen_flags = _Parser(add_help=False)
    gen_flags.add_argument("--gen", choices=GENERATORS, required=True,
                           help="sequence generator")
    gen_flags.add_argument("--value", type=float, help="constant value")
    gen_flags.add_argument("--s", type=float, help="a_s offset parameter in [0, 1]")
    gen_flags.add_argument("--path", help="sequence file for --gen file")
    gen_flags.add_argument("--seed", type=int, help="seed for --gen random")
    gen_flags.add_argument("--bound", type=float, help="bound for --gen random")

    def add(name, handler, parents, help, default_format="csv"):
        p = sub.add_parser(name, parents=parents, help=help)
        p.set_defaults(handler=handler)
        # not shared through a parent: a parent-held action object would be
        # mutated by per-command defaults and leak across subcommands
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        return p

    p = add("gen", _cmd_gen, [gen_flags], "emit raw sequence values")
    p.add_argument("--n", type=int, help="number of terms")
    p.add_argument("--emit", help="write the sequence file here instead of --out/stdout")

    p = add("means", _cmd_means, [gen_flags], "running Cesàro means")
    p.add_argument("--n", type=int, help="number of terms")

    p = add("strong-means", _cmd_strong_means, [gen_flags],
            "running means of |x_n - l|")
    p.add_argument("--n", type=int, help="number of terms")
    p.add_argument("--l", type=float, default=0.0, help="center l (default 0)")

    p = add("blocks", _cmd_blocks, [], "geometric partition table")
    p.add_argument("--alpha", type=float, help="base alpha > 1")
    p.add_argument("--j", type=int, help="emit blocks 1..J")

    p = add("block-means", _cmd_block_means, [gen_flags],
            "per-block means for one base")
    p.add_argument("--alpha", type=float, help="base alpha > 1")
    p.add_argument("--j", type=int, help="number of blocks")
    p.add_argument("--mode", choices=(summability.CARDINALITY, summability.REAL_LENGTH),
                   default=summability.CARDINALITY)

    p = add("w1norm", _cmd_w1norm, [gen_flags],
            "sup of dyadic-block averages of |x_k|")
    p.add_argument("--m", type=int, help="number of dyadic blocks")

    p = add("density", _cmd_density, [gen_flags],
            "asymptotic density band of a 0/1 generator")
    p.add_argument("--n", type=int, help="horizon")
    p.add_argument("--window", type=float, default=0.5,
                   help="trailing window fraction (default 0.5)")

    p = add("check-thm1", _cmd_check_thm1, [gen_flags],
            "all-bases equivalence report", default_format="json")
    p.add_argument("--n", type=int, help="horizon")
    p.add_argument("--bases", default=",".join(repr(b) for b in analysis.DEFAULT_BASES),
                   help="comma-separated bases > 1 ('e' allowed)")
    p.add_argument("--j", type=int, default=None, help="cap on blocks per base")
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--window", type=float, default=analysis.DEFAULT_WINDOW_FRACTION)

    p = add("check-thm2", _cmd_check_thm2, [gen_flags],
            "single-base nonnegative equivalence report", default_format="json")
    p.add_argument("--n", type=int, help="horizon")
    p.add_argument("--alpha", type=float, help="base alpha > 1")
    p.add_argument("--j", type=int, default=None, help="cap on blocks")
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--window", type=float, default=analysis.DEFAULT_WINDOW_FRACTION)

    p = add("demo-counterexample", _cmd_demo, [],
            "signed counterexample report (dyadic block means vs Cesàro tail)",
            default_format="json")
    p.add_argument("--n", type=int, help="horizon (>= 1024)")

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        with _open_out(args) as fp:
            args.handler(args, fp)
            fp.flush()
        return 0
    except (ParameterError, DomainError, HorizonError) as e:
        print(f"cesaro: error: {e}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 2
    except OSError as e:
        print(f"cesaro: error: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
