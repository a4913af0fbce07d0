"""Command line interface: ``sparse-gpd <command> ...``.

Exit codes: 0 success, 2 invalid arguments, 3 file-format violation,
4 internal invariant failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .erosion import dhat_from_matrix, epsilon_matrix, resolve_threads
from .gpd import gpd_points, gri, mobius_inversion, sparse_erosion_distance
from .intervals import IntervalError, grid_domain
from .optim import OptimConfig, OptimizationError, optimize
from .oracle import OracleViolation
from .pipeline import histogram_vectorize, time_delay_embed

log = logging.getLogger("sparse_gpd")

EXIT_ARGS, EXIT_FORMAT, EXIT_INVARIANT = 2, 3, 4


class UsageError(Exception):
    pass


def _cmd_grid(args):
    dom = grid_domain(tuple(args.x_range), tuple(args.y_range), tuple(args.side_range),
                      counts=(args.nxy, args.nsides), name=args.name)
    if args.out:
        io.write_domain(dom, args.out)
    else:
        sys.stdout.write(json.dumps(io.domain_to_json(dom), indent=1) + "\n")
    log.info("grid domain with %d intervals", len(dom))


def _cmd_distance(args):
    A, B = io.read_domain(args.domain_a), io.read_domain(args.domain_b)
    E = epsilon_matrix(A, B, threads=args.threads).entries
    print(f"{dhat_from_matrix(E):.12g}")
    if args.matrix:
        io.write_matrix_csv(E, args.matrix)
    if args.dump_active_path:
        _dump_path(A, B, args.dump_active_path)


def _dump_path(full, sparse, path):
    from .plgraph import build_loss_graph

    if not (full.is_vec6 and sparse.is_vec6):
        raise UsageError("--dump-active-path needs 6-vector domains")
    G = build_loss_graph(full, len(sparse))
    Path(path).write_text(G.active_path_dot(sparse.to_vector()))


def _load_config(args) -> OptimConfig:
    base = {}
    if args.config:
        try:
            base = json.loads(Path(args.config).read_text())
        except json.JSONDecodeError as err:
            raise io.FormatError(f"{args.config}: invalid JSON ({err})") from err
    cli = {"m": args.m, "epochs": args.epochs, "learning_rate": args.lr,
           "momentum": args.momentum, "lr_decay": args.decay, "seed": args.seed}
    base.update({k: v for k, v in cli.items() if v is not None})
    if args.init_domain:
        base["init"] = "explicit"
    try:
        return OptimConfig.from_dict(base)
    except (TypeError, ValueError) as err:
        raise UsageError(str(err)) from err


def _cmd_optimize(args):
    full = io.read_domain(args.full)
    cfg = _load_config(args)
    init = io.read_domain(args.init_domain) if args.init_domain else None
    if init is None and cfg.m > len(full):
        raise UsageError(f"m={cfg.m} exceeds the full domain size {len(full)}")
    best, trace = optimize(full, cfg, init=init)
    io.write_domain(best, args.out)
    if args.trace:
        io.write_trace_csv(trace, args.trace)
    if args.dump_active_path:
        _dump_path(full, best, args.dump_active_path)
    print(f"{trace.best:.12g}")


def _cmd_gpd(args):
    M = io.read_barcode(args.barcode)
    if args.normalize:
        M = io.normalize_barcode(M)
    dom = io.read_domain(args.domain)
    dgm = mobius_inversion(gri(M, dom))
    io.write_gpd_csv(gpd_points(dgm), args.out)


def _cmd_sed(args):
    M, N = io.read_barcode(args.barcode_a), io.read_barcode(args.barcode_b)
    if args.normalize:
        M, N = io.normalize_barcode(M), io.normalize_barcode(N)
    A, B = io.read_domain(args.domain_a), io.read_domain(args.domain_b)
    print(f"{sparse_erosion_distance(M, A, N, B):.12g}")


def _cmd_vectorize(args):
    cloud = io.read_gpd_csv(args.gpd)
    ranges = None
    if args.domain:
        V = io.read_domain(args.domain).vectors()
        ranges = [(float(lo), float(hi) if hi > lo else float(lo) + 1.0)
                  for lo, hi in zip(V.min(axis=0), V.max(axis=0))]
    try:
        hist = histogram_vectorize(cloud, bins=args.bins, sigma=args.sigma, ranges=ranges)
    except ValueError as err:
        raise UsageError(str(err)) from err
    if args.out.endswith(".npy"):
        np.save(args.out, hist.counts)
    else:
        np.savetxt(args.out, hist.vector()[None, :], delimiter=",")


def _cmd_embed(args):
    series = io.read_series_csv(args.series)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "k"] + [f"c{i}" for i in range(args.dim)])
        for ts in series:
            try:
                cloud = time_delay_embed(ts.samples, args.dim)
            except ValueError as err:
                raise UsageError(f"series {ts.label!r}: {err}") from err
            for k, pt in enumerate(cloud):
                w.writerow([ts.label, k] + [repr(float(t)) for t in pt])


def _cmd_oracle_check(args):
    from .checks import run_suite

    rows = run_suite(args.suite, args.cases, args.seed)
    keys = list(rows[0].keys()) if rows else ["case", "ok"]
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys)
            w.writeheader()
            w.writerows(rows)
    n_ok = sum(bool(r["ok"]) for r in rows)
    print(f"{args.suite}: {n_ok}/{len(rows)} cases agree")
    if n_ok != len(rows):
        raise OracleViolation(f"{len(rows) - n_ok} oracle disagreements")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS lets the flags appear before or after the subcommand
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (default: $GPD_SPARSIFY_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="sparse-gpd", parents=[common],
                                description="Sparsify interval domains of generalized persistence diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grid", parents=[common], help="emit a grid domain of (2,1)-intervals")
    g.add_argument("--nxy", type=int, required=True)
    g.add_argument("--nsides", type=int, required=True)
    g.add_argument("--x-range", type=float, nargs=2, default=(0.0, 1.0))
    g.add_argument("--y-range", type=float, nargs=2, default=(0.0, 1.0))
    g.add_argument("--side-range", type=float, nargs=2, default=(0.1, 0.4))
    g.add_argument("--name", default="grid")
    g.add_argument("--out")
    g.set_defaults(func=_cmd_grid)

    d = sub.add_parser("distance", parents=[common], help="d̂ between two domains")
    d.add_argument("--domain-a", required=True)
    d.add_argument("--domain-b", required=True)
    d.add_argument("--matrix", help="write the ε-matrix as CSV")
    d.add_argument("--dump-active-path", help="write the loss graph's active path as DOT")
    d.set_defaults(func=_cmd_distance)

    o = sub.add_parser("optimize", parents=[common], help="sparsify a full domain")
    o.add_argument("--full", required=True)
    o.add_argument("--m", type=int)
    o.add_argument("--epochs", type=int)
    o.add_argument("--lr", type=float)
    o.add_argument("--momentum", type=float)
    o.add_argument("--decay", type=float)
    o.add_argument("--config", help="JSON file with OptimConfig fields")
    o.add_argument("--init-domain", help="explicit initial sparse domain")
    o.add_argument("--out", required=True)
    o.add_argument("--trace")
    o.add_argument("--dump-active-path")
    o.set_defaults(func=_cmd_optimize)

    q = sub.add_parser("gpd", parents=[common], help="GPD of a barcode over a domain")
    q.add_argument("--barcode", required=True)
    q.add_argument("--domain", required=True)
    q.add_argument("--out", required=True)
    q.add_argument("--normalize", action="store_true", help="rescale bars to the unit square")
    q.set_defaults(func=_cmd_gpd)

    s = sub.add_parser("sed", parents=[common], help="sparse erosion distance")
    for k in ("barcode-a", "domain-a", "barcode-b", "domain-b"):
        s.add_argument(f"--{k}", required=True)
    s.add_argument("--normalize", action="store_true")
    s.set_defaults(func=_cmd_sed)

    vz = sub.add_parser("vectorize", parents=[common], help="smoothed 6-d histogram of a GPD")
    vz.add_argument("--gpd", required=True)
    vz.add_argument("--bins", type=int, default=4)
    vz.add_argument("--sigma", type=float, default=0.5)
    vz.add_argument("--domain", help="take histogram ranges from this domain")
    vz.add_argument("--out", required=True)
    vz.set_defaults(func=_cmd_vectorize)

    e = sub.add_parser("embed", parents=[common], help="time-delay embedding of series")
    e.add_argument("--series", required=True)
    e.add_argument("--dim", type=int, default=3)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_embed)

    oc = sub.add_parser("oracle-check", parents=[common], help="compare closed forms to brute force")
    oc.add_argument("--suite", choices=["eps", "dhat", "mobius", "lipschitz"], required=True)
    oc.add_argument("--cases", type=int, default=50)
    oc.add_argument("--report")
    oc.set_defaults(func=_cmd_oracle_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.verbose = getattr(args, "verbose", False)
    args.threads = resolve_threads(getattr(args, "threads", None))
    args.seed = getattr(args, "seed", None)
    if args.seed is None and args.command == "oracle-check":
        args.seed = 0
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (io.FormatError, FileNotFoundError) as err:
        print(f"format error: {err}", file=sys.stderr)
        return EXIT_FORMAT
    except (UsageError, IntervalError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ARGS
    except (OracleViolation, OptimizationError, AssertionError) as err:
        print(f"invariant failure: {err}", file=sys.stderr)
        return EXIT_INVARIANT
    return 0


if __name__ == "__main__":
    sys.exit(main())
