"""Command-line front end.

Results go to standard output in plain, JSON or CSV form; progress and
diagnostics go to standard error. Exit codes: 0 success, 1 a verification
row failed, 2 usage or input error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable

from . import constructions as C
from .dp import longest_value_staircase, st_profile
from .matrix import MatrixFormatError, parse_matrix, serialize_matrix
from .search import DEFAULT_BUDGET_CELLS, BudgetExceeded, exact_extremal, probe_two_turn_bound
from . import verify as V

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

GLOBAL_DEFAULTS = {"format": "plain", "seed": 0, "threads": 1, "budget_cells": DEFAULT_BUDGET_CELLS}


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """'3..12' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        v = int(text)
        return range(v, v + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected INT or LO..HI") from None


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("plain", "json", "csv"), default=d("plain"))
    p.add_argument("--seed", type=int, default=d(0))
    p.add_argument("--threads", type=int, default=d(1))
    p.add_argument("--budget-cells", type=int, default=d(DEFAULT_BUDGET_CELLS))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staircases", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        _global_flags(sp, suppress=True)
        return sp

    p = add("compute", help="longest staircases of a matrix")
    p.add_argument("path", help="matrix file, or - for standard input")
    p.add_argument("--value", type=int, choices=(0, 1))
    p.add_argument("--max-turns", type=int)
    p.add_argument("--witness", action="store_true")

    p = add("construct", help="print a P, Q or R matrix")
    p.add_argument("family", choices=sorted(C.BUILDERS))
    p.add_argument("n", type=int)
    p.add_argument("N", type=int)

    p = add("search", help="exact extremal value by exhaustive enumeration")
    p.add_argument("statistic", choices=("st", "sigma", "st-turns", "probe"))
    p.add_argument("n", type=int)
    p.add_argument("N", type=int, nargs="?")
    p.add_argument("--max-turns", type=int)
    p.add_argument("--samples", type=int, default=10_000, help="sample size for probe beyond budget")
    p.add_argument("--quiet", action="store_true", help="no progress lines")

    p = add("verify", help="check a claim over a range and print a pass/fail table")
    p.add_argument("target", choices=V.TARGETS)
    p.add_argument("--n", dest="n_range", type=parse_range)
    p.add_argument("--N", dest="N_range", type=parse_range)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-cells", type=int, default=20)
    p.add_argument("--exhaustive", action="store_true", help="thm2/obs10: every n x n matrix")

    p = add("sweep", help="formula and DP values over a grid")
    p.add_argument("target", choices=V.SWEEPS)
    p.add_argument("--n", dest="n_range", type=parse_range, default=range(1, 9))
    p.add_argument("--N", dest="N_range", type=parse_range, default=range(1, 9))
    return parser


# --- output helpers ---------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        # matrices are lists of row strings: rows joined by '/', matrices by '|'
        if v and isinstance(v[0], (list, tuple)):
            return "|".join("/".join(_cell(y) for y in x) for x in v)
        return "/".join(_cell(x) for x in v)
    return str(v)


def emit_table(rows: list[dict], fmt: str, columns: list[str] | None = None, out=None) -> None:
    out = out or sys.stdout
    cols = columns or (list(rows[0]) if rows else [])
    if fmt == "json":
        print(json.dumps(rows, separators=(",", ":")), file=out)
        return
    if fmt == "csv":
        print(",".join(cols), file=out)
        for r in rows:
            print(",".join(_cell(r.get(c)) for c in cols), file=out)
        return
    if not cols:
        return
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip(), file=out)
    for row in cells:
        print("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip(), file=out)


def emit_record(rec: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps(rec, separators=(",", ":")), file=out)
    elif fmt == "csv":
        emit_table([rec], "csv", out=out)
    else:
        for k, v in rec.items():
            print(f"{k}={_cell(v)}", file=out)


def _read_matrix(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_matrix(text)


# --- subcommands --------------------------------------------------------------

def cmd_compute(args) -> int:
    M = _read_matrix(args.path)
    if args.max_turns is not None and args.max_turns < 0:
        raise UsageError("--max-turns must be >= 0")
    if args.value is None and args.max_turns is None and not args.witness:
        emit_record(st_profile(M).to_dict(), args.format)
        return EXIT_OK
    values = (args.value,) if args.value is not None else (0, 1)
    results = [(v, *longest_value_staircase(M, v, args.max_turns)) for v in values]
    v, length, S = max(results, key=lambda r: r[1])
    if args.witness:
        obj = S.to_dict() if S is not None else {"value": v, "cells": [], "turns": 0}
        print(json.dumps(obj, separators=(",", ":")))
        return EXIT_OK
    emit_record({"value": v, "max_turns": args.max_turns, "length": length}, args.format)
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        M = C.BUILDERS[args.family](args.n, args.N)
    except C.RangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "csv":
        print("\n".join(",".join(r) for r in M.row_strings()))
    else:
        print(serialize_matrix(M, args.format))
    return EXIT_OK


def cmd_search(args) -> int:
    N = args.N if args.N is not None else args.n
    if args.statistic == "probe":
        res = probe_two_turn_bound(args.n, args.samples, seed=args.seed,
                                   max_turns=2 if args.max_turns is None else args.max_turns,
                                   budget_cells=args.budget_cells, threads=args.threads)
        emit_record(res.to_dict(), args.format)
        return EXIT_OK
    statistic = args.statistic
    if args.max_turns is not None and statistic == "st":
        statistic = "st-turns"
    if statistic == "st-turns" and args.max_turns is None:
        raise UsageError("st-turns needs --max-turns")
    rep = exact_extremal(args.n, N, statistic, max_turns=args.max_turns, threads=args.threads,
                         budget_cells=args.budget_cells, progress=not args.quiet)
    rec = rep.to_dict()
    # timings vary run to run, so they go to stderr and stdout stays reproducible
    timing = {k: rec.pop(k) for k in ("wall_time", "matrices_per_second")}
    emit_record(rec, args.format)
    print(f"[search] wall_time={timing['wall_time']}s rate={timing['matrices_per_second']}/s",
          file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = V.run_target(args.target, n_range=args.n_range, N_range=args.N_range,
                        trials=args.trials, seed=args.seed, max_cells=args.max_cells,
                        threads=args.threads, budget_cells=args.budget_cells,
                        exhaustive=args.exhaustive, with_trace=args.format == "json")
    emit_table(rows, args.format, V.columns_for(args.target, rows))
    failed = sum(1 for r in rows if not r["pass"])
    summary = V.summarize(args.target, rows)
    print(f"[verify {args.target}] rows={len(rows)} failed={failed} {summary}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sweep(args) -> int:
    rows = V.sweep(args.target, args.n_range, args.N_range, budget_cells=args.budget_cells,
                   threads=args.threads)
    emit_table(rows, args.format, V.sweep_columns(args.target))
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "construct": cmd_construct, "search": cmd_search,
            "verify": cmd_verify, "sweep": cmd_sweep}


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return COMMANDS[args.command](args)
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
