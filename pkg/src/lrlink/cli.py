"""Command line interface: ``lrlink {stats,predict,sweep,rpca}``."""

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import warnings

import numpy as np

from . import __version__
from .graph import EdgeListError, adjacency_matrix, network_stats, read_edge_list
from .evaluate import run_experiment, sweep
from .linalg import l1_norm, nuclear_norm
from .predict import PREDICTORS, canonical_predictor
from .rpca import RpcaOptions, solve_rpca

log = logging.getLogger("lrlink")


class CliError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def _fmt_table(header, rows, formats):
    cells = [list(header)]
    for row in rows:
        cells.append([_fmt_cell(v, f) for v, f in zip(row, formats)])
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _fmt_cell(v, f):
    if v is None:
        return "-"
    if isinstance(v, float) and f:
        return format(v, f)
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, np.generic):
        return v.item()
    return v


def render(header, rows, fmt, formats=None):
    formats = formats or [""] * len(header)
    if fmt == "table":
        return _fmt_table(header, rows, formats)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
        return buf.getvalue()
    records = [{h: _json_value(v) for h, v in zip(header, row)} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- helpers

def load_graph(args):
    try:
        g = read_edge_list(args.input, weighted=args.weighted)
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    except EdgeListError as exc:
        raise CliError(f"{args.input}: {exc}") from None
    if g.n_edges == 0:
        raise CliError(f"{args.input}: no edges")
    return g


def parse_predictors(text):
    try:
        return [canonical_predictor(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError:
        raise CliError(f"unknown predictor in {text!r}; valid names: {', '.join(PREDICTORS)}") from None


def parse_fractions(text):
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise CliError(f"bad fraction list {text!r}") from None
    for v in values:
        if not 0 < v < 1:
            raise CliError(f"fractions must lie in (0, 1), got {v}")
    return values


def rpca_options(args):
    try:
        return RpcaOptions(lam=args.lam, tol=args.tol, max_iter=args.max_iter)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def read_dense(path):
    with open(path, encoding="utf-8") as f:
        header = f.readline().split()
        if len(header) != 2:
            raise CliError(f"{path}: first line must be 'rows cols'")
        try:
            rows, cols = int(header[0]), int(header[1])
            data = np.array([float(t) for line in f for t in line.split()], dtype=np.float64)
        except ValueError as exc:
            raise CliError(f"{path}: {exc}") from None
    if data.size != rows * cols:
        raise CliError(f"{path}: expected {rows * cols} values, found {data.size}")
    return data.reshape(rows, cols)


def write_dense(path, m):
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"{m.shape[0]} {m.shape[1]}\n")
        for row in m:
            f.write(" ".join(repr(float(v)) for v in row) + "\n")


def network_name(path):
    return os.path.splitext(os.path.basename(path))[0]


# ---------------------------------------------------------------- commands

STATS_HEADER = ("network", "n", "|E|", "C", "r", "<k>", "H", "R", "tau", "D")
STATS_FORMATS = ["", "", "", ".3f", ".2f", ".3f", ".3f", "", ".3f", ".4f"]


def cmd_stats(args):
    g = load_graph(args)
    st = network_stats(g)
    emit(render(STATS_HEADER, [(network_name(args.input),) + st.row()], args.format, STATS_FORMATS), args.out)


def cmd_predict(args):
    g = load_graph(args)
    predictors = parse_predictors(args.predictor)
    opts = rpca_options(args)
    header = ("network", "predictor", "fraction", "seed", "L", "hits", "precision")
    rows, dumps = [], []
    for p in predictors:
        try:
            out = run_experiment(g, p, args.fraction, args.seed, opts)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        rows.append((network_name(args.input), p, args.fraction, args.seed,
                     out.probe_size, out.hits, out.precision))
        if args.dump_ranked:
            for rank, ((i, j), s) in enumerate(out.ranked_links, 1):
                dumps.append((p, rank, g.labels[i], g.labels[j], s))
    formats = ["", "", "", "", "", "", ".3f"]
    text = render(header, rows, args.format, formats)
    if args.dump_ranked:
        text += render(("predictor", "rank", "u", "v", "score"), dumps,
                       "csv" if args.format == "table" else args.format)
    emit(text, args.out)


def cmd_sweep(args):
    g = load_graph(args)
    predictors = parse_predictors(args.predictor)
    fractions = parse_fractions(args.fractions)
    if args.reps < 1:
        raise CliError("--reps must be at least 1")
    try:
        reports = sweep(g, predictors, fractions, args.reps, args.seed,
                        rpca_options(args), network_name(args.input), workers=args.jobs)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    header = ("network", "predictor", "fraction", "mean", "std", "reps")
    rows = [(r.network, r.predictor, r.probe_fraction, r.mean_precision,
             r.std_precision, r.repetitions) for r in reports]
    emit(render(header, rows, args.format, ["", "", "", ".3f", ".3f", ""]), args.out)


def cmd_rpca(args):
    if args.matrix:
        try:
            a = read_dense(args.input)
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc.strerror or exc}") from None
        if a.shape[0] != a.shape[1]:
            raise CliError(f"{args.input}: matrix must be square, got {a.shape[0]}x{a.shape[1]}")
    else:
        a = adjacency_matrix(load_graph(args))
    try:
        sol = solve_rpca(a, rpca_options(args))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    norm_a = float(np.linalg.norm(a))
    residual = float(np.linalg.norm(a - sol.backbone - sol.noise)) / norm_a if norm_a else 0.0
    record = {
        "n": a.shape[0],
        "lambda": sol.lam,
        "iterations": sol.iterations,
        "converged": sol.converged,
        "residual": residual,
        "nuclear_norm": nuclear_norm(sol.backbone),
        "l1_norm": l1_norm(sol.noise),
    }
    record["objective"] = record["nuclear_norm"] + sol.lam * record["l1_norm"]
    if args.truth:
        try:
            truth = read_dense(args.truth)
        except OSError as exc:
            raise CliError(f"cannot read {args.truth}: {exc.strerror or exc}") from None
        if truth.shape != a.shape:
            raise CliError(f"{args.truth}: shape {truth.shape} does not match input {a.shape}")
        record["recovery_error"] = float(np.linalg.norm(sol.backbone - truth) / np.linalg.norm(truth))
    if args.out:
        write_dense(args.out + ".backbone.txt", sol.backbone)
        write_dense(args.out + ".noise.txt", sol.noise)
    header = tuple(record)
    emit(render(header, [tuple(record.values())], args.format, [""] * len(header)), None)


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", required=True, metavar="PATH", help="edge-list file")
    common.add_argument("--weighted", action="store_true", help="read a third column as edge weight")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--lambda", dest="lam", type=float, default=None,
                        help="sparsity weight; default 1/sqrt(n) for rpca, density-based for the LR predictor")
    solver.add_argument("--tol", type=float, default=1e-7)
    solver.add_argument("--max-iter", type=int, default=1000)

    parser = argparse.ArgumentParser(prog="lrlink", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", parents=[common], help="topology statistics of a network")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("predict", parents=[common, solver], help="precision of predictors on one split")
    p.add_argument("--predictor", default="lr", help=f"comma-separated list of {', '.join(PREDICTORS)}")
    p.add_argument("--fraction", type=float, default=0.1, help="probe fraction")
    p.add_argument("--dump-ranked", action="store_true", help="also print the ranked top-L links")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", parents=[common, solver], help="mean precision over probe fractions")
    p.add_argument("--predictor", default="lr,cn")
    p.add_argument("--fractions", default="0.05,0.1,0.15,0.2")
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rpca", parents=[common, solver], help="low-rank + sparse decomposition")
    p.add_argument("--matrix", action="store_true",
                   help="input is a dense matrix file ('rows cols' header) instead of an edge list")
    p.add_argument("--truth", metavar="PATH", help="dense ground-truth backbone to report recovery error")
    p.set_defaults(func=cmd_rpca)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = lambda msg, cat, *a, **k: print(f"warning: {msg}", file=sys.stderr)
        try:
            args.func(args)
        except CliError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
