"""
Command-line front end.

    lorenz-jel test --x a.csv --y b.csv --t 0.2,0.4 --method both
    lorenz-jel curve --input a.csv --grid 10 --analytic exponential:1
    lorenz-jel simulate --table T2 --reps 1000 --seed 1 --workers 4
    lorenz-jel schema test

Exit codes: 0 success, 1 data error, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

from . import __version__
from .curves import TGrid, curve_table
from .distributions import SeededStream, analytic_gl, parse_dist
from .el_engine import METHODS, run_test
from .ingest import IngestSpec, load_sample, subsample
from .jackknife import QUANTILE_MODES, TwoSamples
from .montecarlo import REFERENCE_TABLES, SIM_QUANTILE_MODES, SIM_T_GRID, SimConfig, run_simulation, table_suite
from .schemas import SCHEMAS

SEED_ENV = "LORENZ_JEL_SEED"
APPLICATION_T_GRID = (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)

log = logging.getLogger("lorenz_jel")


class DataError(Exception):
    pass


# argument types -----------------------------------------------------------

def _probability(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= t <= 1.0:
        raise argparse.ArgumentTypeError("t must lie in [0,1]")
    return t


def t_list(text: str) -> tuple:
    pts = tuple(_probability(tok) for tok in text.split(",") if tok.strip())
    if not pts:
        raise argparse.ArgumentTypeError("empty t list")
    return pts


def alpha_value(text: str) -> float:
    a = float(text)
    if not 0.0 < a < 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0,1)")
    return a


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def grid_value(text: str) -> TGrid:
    """``N`` (integer) for ``1/N, ..., 1`` or a comma list of t values."""
    tok = text.strip()
    if "," not in tok and tok.isdigit():
        n = int(tok)
        if n < 1:
            raise argparse.ArgumentTypeError("grid size must be positive")
        return TGrid.uniform(n)
    try:
        return TGrid(t_list(tok))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def dist_value(text: str):
    try:
        parse_dist(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DataError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return 0


# output -------------------------------------------------------------------

def _jsonable(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def envelope(command: str, payload: dict, seed, config: dict) -> dict:
    return {
        "command": command,
        "provenance": {"tool": "lorenz-jel", "version": __version__, "seed": seed, "config": config},
        "payload": payload,
    }


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r[c] if c in r else "" for c in columns])
    return buf.getvalue()


def _plain(columns, rows) -> str:
    def fmt(v):
        if isinstance(v, float):
            return f"{v:.6g}" if not math.isinf(v) else "inf"
        return str(v)
    cells = [[fmt(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c)
              for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render(fmt: str, command: str, columns, rows, payload, seed, config) -> str:
    if fmt == "json":
        return json.dumps(envelope(command, payload, seed, config), indent=2, allow_nan=False) + "\n"
    if fmt == "csv":
        return _csv(columns, rows)
    return _plain(columns, rows)


# commands -----------------------------------------------------------------

def _ingest(path, args) -> IngestSpec:
    header = None if args.header is None else args.header
    return IngestSpec(path, column=args.column, delimiter=args.delimiter, has_header=header,
                      min_value=args.min_value, log_transform=args.log_transform)


def cmd_test(args) -> int:
    seed = resolve_seed(args.seed)
    x = load_sample(_ingest(args.x, args))
    y = load_sample(_ingest(args.y, args))
    if args.subsample:
        x = subsample(x, args.subsample, SeededStream(seed, 1))
        y = subsample(y, args.subsample, SeededStream(seed, 2))
    pair = TwoSamples(x, y)
    methods = METHODS if args.method == "both" else (args.method.upper(),)
    results = [run_test(pair, t, m, args.alpha, args.quantile_mode)
               for t in args.t for m in methods]
    for r in results:
        if r.endpoint:
            log.info("t=%g is an endpoint; chi-square calibration is not guaranteed there", r.t)
        if not r.hull_ok:
            log.warning("t=%g %s: zero outside convex hull of pseudo-values", r.t, r.method)
    rows = [r.as_dict() for r in results]
    columns = ("method", "t", "statistic", "p_value", "reject", "alpha", "hull_ok", "n1", "n2")
    payload = {"results": [{k: _jsonable(v) for k, v in row.items()} for row in rows]}
    config = {"x": str(args.x), "y": str(args.y), "t": list(args.t), "method": args.method,
              "alpha": args.alpha, "quantile_mode": args.quantile_mode,
              "log_transform": args.log_transform, "subsample": args.subsample,
              "column": args.column, "min_value": args.min_value}
    emit(render(args.format, "test", columns, rows, payload, seed, config), args.output)
    return 0


def cmd_curve(args) -> int:
    s = load_sample(_ingest(args.input, args))
    spec = parse_dist(args.analytic, args.exp_param) if args.analytic else None
    rows = []
    for t, lor, gl in curve_table(s, args.grid):
        row = {"t": t, "lorenz": lor, "gl": gl}
        if spec is not None:
            row["analytic_gl"] = analytic_gl(spec, t)
        rows.append(row)
    columns = ("t", "lorenz", "gl") + (("analytic_gl",) if spec is not None else ())
    config = {"input": str(args.input), "grid": list(args.grid.points),
              "analytic": spec.label() if spec else None, "log_transform": args.log_transform,
              "column": args.column, "min_value": args.min_value}
    emit(render(args.format, "curve", columns, rows, {"rows": rows}, None, config), args.output)
    return 0


def cmd_simulate(args, parser) -> int:
    seed = resolve_seed(args.seed)
    methods = METHODS if args.method == "both" else (args.method.upper(),)
    common = dict(alpha=args.alpha, methods=methods, quantile_mode=args.quantile_mode,
                  t_grid=args.t)
    if args.table:
        if args.dist_x or args.dist_y:
            parser.error("--table cannot be combined with --dist-x/--dist-y")
        sizes = ((args.n1, args.n2),) if args.n1 and args.n2 else None
        kw = {"sizes": sizes} if sizes else {}
        table = table_suite(args.table, reps=args.reps, seed=seed, workers=args.workers, **common, **kw)
    else:
        if not (args.dist_x and args.dist_y and args.n1 and args.n2):
            parser.error("give --table or all of --dist-x, --dist-y, --n1, --n2")
        cfg = SimConfig(parse_dist(args.dist_x, args.exp_param), parse_dist(args.dist_y, args.exp_param),
                        args.n1, args.n2, reps=args.reps, seed=seed, **common)
        table = run_simulation(cfg, workers=args.workers)
    if args.format == "csv":
        text = table.to_csv()
    else:
        rows = table.to_dict()["rows"]
        columns = ("method", "t", "n1", "n2", "rate", "se", "hull_fail_rate")
        config = {"table": args.table, "reps": args.reps, "alpha": args.alpha,
                  "exp_param": args.exp_param, **table.meta}
        text = render(args.format, "simulate", columns, rows, table.to_dict(), seed, config)
    emit(text, args.output)
    return 0


def cmd_schema(args) -> int:
    sys.stdout.write(json.dumps(SCHEMAS[args.command_name], indent=2) + "\n")
    return 0


# parser -------------------------------------------------------------------

def _add_ingest_args(p) -> None:
    p.add_argument("--column", default="0", help="column name or 0-based index (default 0)")
    p.add_argument("--delimiter", default=",")
    hdr = p.add_mutually_exclusive_group()
    hdr.add_argument("--header", dest="header", action="store_true", default=None)
    hdr.add_argument("--no-header", dest="header", action="store_false")
    p.add_argument("--min-value", type=float, default=None, help="drop rows below this value")
    p.add_argument("--log-transform", action="store_true", help="natural log of retained values")


def _add_output_args(p, default="plain") -> None:
    p.add_argument("--format", choices=("json", "csv", "plain"), default=default)
    p.add_argument("--output", "-o", default=None, help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lorenz-jel", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="JEL/AJEL test of equal generalized Lorenz ordinates")
    p.add_argument("--x", required=True, help="first sample file")
    p.add_argument("--y", required=True, help="second sample file")
    p.add_argument("--t", type=t_list, default=APPLICATION_T_GRID, help="comma list of t values")
    p.add_argument("--method", choices=("jel", "ajel", "both"), default="both")
    p.add_argument("--alpha", type=alpha_value, default=0.05)
    p.add_argument("--quantile-mode", choices=QUANTILE_MODES, default="per_sample")
    p.add_argument("--subsample", type=positive_int, default=None,
                   help="test on a random subsample of this size from each file")
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (fallback ${SEED_ENV})")
    _add_ingest_args(p)
    _add_output_args(p)

    p = sub.add_parser("curve", help="empirical Lorenz and generalized Lorenz ordinates")
    p.add_argument("--input", required=True)
    p.add_argument("--grid", type=grid_value, default=TGrid.uniform(10),
                   help="integer N for t = 1/N..1, or a comma list")
    p.add_argument("--analytic", type=dist_value, default=None, metavar="FAMILY:PARAM",
                   help="overlay a population GL curve, e.g. exponential:1")
    p.add_argument("--exp-param", choices=("mean", "rate"), default="mean")
    _add_ingest_args(p)
    _add_output_args(p)

    p = sub.add_parser("simulate", help="Monte Carlo size/power table")
    p.add_argument("--table", type=str.upper, choices=sorted(REFERENCE_TABLES), default=None)
    p.add_argument("--dist-x", type=dist_value, default=None, metavar="FAMILY:PARAM")
    p.add_argument("--dist-y", type=dist_value, default=None, metavar="FAMILY:PARAM")
    p.add_argument("--n1", type=positive_int, default=None)
    p.add_argument("--n2", type=positive_int, default=None)
    p.add_argument("--t", type=t_list, default=SIM_T_GRID)
    p.add_argument("--reps", type=positive_int, default=1000)
    p.add_argument("--seed", type=int, default=None, help=f"RNG seed (fallback ${SEED_ENV})")
    p.add_argument("--alpha", type=alpha_value, default=0.05)
    p.add_argument("--method", choices=("jel", "ajel", "both"), default="both")
    p.add_argument("--quantile-mode", choices=SIM_QUANTILE_MODES, default="true_quantile")
    p.add_argument("--exp-param", choices=("mean", "rate"), default="mean")
    p.add_argument("--workers", type=positive_int, default=1)
    _add_output_args(p, default="csv")

    p = sub.add_parser("schema", help="print the JSON Schema for a command's --format json output")
    p.add_argument("command_name", choices=sorted(SCHEMAS))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "test":
            return cmd_test(args)
        if args.command == "curve":
            return cmd_curve(args)
        if args.command == "simulate":
            if (args.n1 is not None and args.n1 < 2) or (args.n2 is not None and args.n2 < 2):
                parser.error("--n1/--n2 must be at least 2")
            return cmd_simulate(args, parser)
        return cmd_schema(args)
    except (DataError, ValueError, OSError) as exc:
        print(f"lorenz-jel: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
