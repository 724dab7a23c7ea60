"""Command-line entry point: ``supraclust {analyze,density,strength,rank,compare,synth}``.

Exit status is 0 on success, 1 for input/format errors and 2 for errors
raised while computing.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from . import clustering, degrees
from .clustering import FAMILIES
from .errors import SupraclustError
from .ingest import format_float, load_network
from .report import densities, intra_strength_table, rank, spearman, strength_breakdown

log = logging.getLogger("supraclust")

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2


class StageError(Exception):
    def __init__(self, stage: str, exit_code: int, cause: BaseException):
        self.stage, self.exit_code, self.cause = stage, exit_code, cause
        super().__init__(f"[{stage}] {cause}")


@contextlib.contextmanager
def stage(name: str, exit_code: int, timings: dict):
    t0 = time.perf_counter()
    try:
        yield
    except StageError:
        raise
    except (SupraclustError, OSError, ValueError, KeyError, IndexError) as exc:
        raise StageError(name, exit_code, exc) from exc
    finally:
        timings[name] = round(time.perf_counter() - t0, 6)


# -- output helpers -------------------------------------------------------

def _cell(x):
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    if x is None:
        return ""
    return str(x)


def write_table(header, rows, dest: Path | None, name: str) -> str | None:
    """Write ``rows`` as CSV to ``dest/name`` or, without a directory, to stdout."""
    def emit(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_cell(c) for c in row] for row in rows)

    if dest is None:
        emit(sys.stdout)
        return None
    dest.mkdir(parents=True, exist_ok=True)
    with open(dest / name, "w", newline="", encoding="utf-8") as fh:
        emit(fh)
    return str(dest / name)


def _summary(args, report, timings, files, extra=None):
    out = {"command": args.command, "ingest": report.as_dict(), "timings_s": timings, "files": files}
    if extra:
        out.update(extra)
    stream = sys.stdout if getattr(args, "out", None) else sys.stderr
    print(json.dumps(out, indent=2), file=stream)


# -- metrics for `rank` and `compare` ------------------------------------

def node_metric(net, name: str) -> dict[str, float]:
    """Resolve a node-level metric name to ``{node label: value}``."""
    labels = net.node_labels
    table = None
    if name.startswith(("strength", "degree")):
        kind, _, variant = name.partition("_")
        variant = variant or "total"
        vec = (degrees.strength_vector if kind == "strength" else degrees.degree_vector)(net, variant)
        table = degrees.by_node_layer(net, vec).sum(axis=1)
    elif name == "intra_strength":
        table = intra_strength_table(net).sum(axis=1)
    elif name.startswith("clustering_node_"):
        table = clustering.coefficients(net, name.rsplit("_", 1)[1]).per_node
    elif name.startswith("monoplex_node_"):
        table = clustering.monoplex_average(net, name.rsplit("_", 1)[1], by="node")[0]
    if table is None:
        raise KeyError(name)
    return {lab: float(v) for lab, v in zip(labels, table)}


def layer_metric(net, name: str) -> dict[str, float]:
    labels = net.layer_labels
    if name.startswith("clustering_layer_"):
        table = clustering.coefficients(net, name.rsplit("_", 1)[1]).per_layer
    elif name.startswith("monoplex_layer_"):
        table = clustering.monoplex_average(net, name.rsplit("_", 1)[1], by="layer")[0]
    elif name in ("intra_density", "avg_inter_density"):
        table = [getattr(r, name) for r in densities(net)]
    elif name == "layer_strength":
        table = [r.in_intra + r.in_inter + r.out_intra + r.out_inter for r in strength_breakdown(net, "layer")]
    else:
        raise KeyError(name)
    return {lab: float(v) for lab, v in zip(labels, table)}


NODE_METRICS = (
    [f"{k}{v}" for k in ("strength", "degree") for v in ("", "_in", "_out", "_total", "_bilateral")]
    + ["intra_strength"]
    + [f"clustering_node_{f}" for f in FAMILIES]
    + [f"monoplex_node_{f}" for f in FAMILIES]
)
LAYER_METRICS = (
    [f"clustering_layer_{f}" for f in FAMILIES]
    + [f"monoplex_layer_{f}" for f in FAMILIES]
    + ["intra_density", "avg_inter_density", "layer_strength"]
)


def metric_values(net, name: str) -> dict[str, float]:
    if name in NODE_METRICS:
        return node_metric(net, name)
    if name in LAYER_METRICS:
        return layer_metric(net, name)
    raise ValueError(f"unknown metric {name!r}; choose from {', '.join(NODE_METRICS + LAYER_METRICS)}")


def _ranking_rows(r):
    return [(e, v, r_) for e, v, r_ in zip(r.entities, r.values, r.ranks)]


# -- subcommands ----------------------------------------------------------

def _load(args, timings):
    with stage("ingest", EXIT_INPUT, timings):
        net, report, rejects = load_network(args.input, merge=args.merge)
    for rej in rejects[:20]:
        log.warning("line %d rejected: %s", rej.line, rej.reason)
    return net, report


def cmd_analyze(args, timings) -> dict:
    net, report = _load(args, timings)
    out = Path(args.out)
    fams = FAMILIES if args.coef == "all" else (args.coef,)
    files = []
    for fam in fams:
        with stage(f"clustering:{fam}", EXIT_COMPUTE, timings):
            c = clustering.coefficients(net, fam)
            if args.level == "local":
                header = ("node", "layer", "value", "flagged")
                vals, flags = c.local, c.local_flags
                rows = [
                    (net.node_labels[i], net.layer_labels[a], vals[i, a], flags[i, a])
                    for a in range(net.n_layers) for i in range(net.n_nodes)
                ]
            elif args.level == "node":
                header = ("node", "value", "flagged")
                rows = list(zip(net.node_labels, c.per_node, c.per_node_flags))
            elif args.level == "layer":
                header = ("layer", "value", "flagged")
                rows = list(zip(net.layer_labels, c.per_layer, c.per_layer_flags))
            else:
                header = ("family", "value", "flagged")
                rows = [(fam, c.global_value, c.global_flag)]
        with stage(f"write:{fam}", EXIT_COMPUTE, timings):
            files.append(write_table(header, rows, out, f"clustering_{args.level}_{fam}.csv"))
    _summary(args, report, timings, files)
    return {"files": files}


def cmd_density(args, timings):
    net, report = _load(args, timings)
    with stage("density", EXIT_COMPUTE, timings):
        rows = [(r.layer, r.intra_density, r.avg_inter_density) for r in densities(net)]
    dest = Path(args.out) if args.out else None
    f = write_table(("layer", "intra_density", "avg_inter_density"), rows, dest, "densities.csv")
    _summary(args, report, timings, [f] if f else [])


def cmd_strength(args, timings):
    net, report = _load(args, timings)
    with stage("strength", EXIT_COMPUTE, timings):
        rows = [
            (r.entity, r.in_intra, r.in_inter, r.out_intra, r.out_inter, r.intra_inter_ratio, r.in_out_ratio)
            for r in strength_breakdown(net, args.by)
        ]
    dest = Path(args.out) if args.out else None
    header = ("entity", "in_intra", "in_inter", "out_intra", "out_inter", "intra_inter_ratio", "in_out_ratio")
    f = write_table(header, rows, dest, f"strength_{args.by}.csv")
    _summary(args, report, timings, [f] if f else [])


def cmd_rank(args, timings):
    net, report = _load(args, timings)
    with stage("rank", EXIT_COMPUTE, timings):
        r = rank(metric_values(net, args.metric), descending=not args.ascending)
    dest = Path(args.out) if args.out else None
    f = write_table(("entity", "value", "rank"), _ranking_rows(r), dest, f"rank_{args.metric}.csv")
    _summary(args, report, timings, [f] if f else [])


def cmd_compare(args, timings):
    net, report = _load(args, timings)
    with stage("compare", EXIT_COMPUTE, timings):
        lvl = args.level
        first = metric_values(net, f"clustering_{lvl}_{args.coef}")
        if args.against == "monoplex":
            second = metric_values(net, f"monoplex_{lvl}_{args.coef}")
        else:
            second = metric_values(net, f"clustering_{lvl}_{args.against}")
        r1, r2 = rank(first), rank(second)
        rho = spearman(r1, r2)
    ranks1, ranks2 = r1.rank_of(), r2.rank_of()
    ents = list(r1.entities)
    rows = [(e, first[e], ranks1[e], second[e], ranks2[e]) for e in ents]
    name = f"compare_{lvl}_{args.coef}_vs_{args.against}"
    dest = Path(args.out)
    with stage("write", EXIT_COMPUTE, timings):
        f = write_table((lvl, f"{args.coef}_value", f"{args.coef}_rank",
                         f"{args.against}_value", f"{args.against}_rank"), rows, dest, name + ".csv")
        (dest / (name + ".json")).write_text(json.dumps({"spearman": rho, "n": len(ents)}, indent=2) + "\n")
    _summary(args, report, timings, [f, str(dest / (name + ".json"))], {"spearman": rho})


def cmd_synth(args, timings):
    from .synthetic import write_wiod_like_csv

    with stage("synth", EXIT_COMPUTE, timings):
        net = write_wiod_like_csv(args.output, seed=args.seed, density=args.density)
    print(json.dumps({"output": args.output, "N": net.n_nodes, "L": net.n_layers,
                      "arcs": int(np.count_nonzero(net.weights)), "timings_s": timings}, indent=2))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supraclust", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("--input", required=True, help="canonical edge-list CSV")
        sp.add_argument("--merge", choices=("sum", "error"), default="sum",
                        help="how repeated arcs are handled (default: sum)")
        return sp

    a = with_input(sub.add_parser("analyze", help="clustering coefficients"))
    a.add_argument("--coef", choices=FAMILIES + ("all",), default="all")
    a.add_argument("--level", choices=("local", "node", "layer", "global"), default="local")
    a.add_argument("--out", required=True)
    a.set_defaults(func=cmd_analyze)

    d = with_input(sub.add_parser("density", help="intra- and inter-layer densities"))
    d.add_argument("--out")
    d.set_defaults(func=cmd_density)

    s = with_input(sub.add_parser("strength", help="intra/inter, in/out strength breakdown"))
    s.add_argument("--by", choices=("node", "layer"), required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_strength)

    r = with_input(sub.add_parser("rank", help="rank nodes or layers by a metric"))
    r.add_argument("--metric", required=True, help="one of: " + ", ".join(NODE_METRICS + LAYER_METRICS))
    r.add_argument("--ascending", action="store_true", help="rank smallest first")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rank)

    c = with_input(sub.add_parser("compare", help="rank correlation between two coefficients"))
    c.add_argument("--coef", choices=FAMILIES, required=True)
    c.add_argument("--against", choices=("monoplex",) + FAMILIES, required=True)
    c.add_argument("--level", choices=("node", "layer"), default="node")
    c.add_argument("--out", default=".")
    c.set_defaults(func=cmd_compare)

    g = sub.add_parser("synth", help="write a random WIOD-shaped network as canonical CSV")
    g.add_argument("--output", required=True)
    g.add_argument("--seed", type=int, default=2014)
    g.add_argument("--density", type=float, default=0.2)
    g.set_defaults(func=cmd_synth)
    return p


def _thread_cap() -> int | None:
    raw = os.environ.get("SUPRACLUST_THREADS")
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        log.warning("ignoring non-integer SUPRACLUST_THREADS=%r", raw)
        return None
    return max(n, 1)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    timings: dict[str, float] = {}
    try:
        with threadpool_limits(limits=_thread_cap()):
            args.func(args, timings)
    except StageError as exc:
        print(f"supraclust: error {exc}", file=sys.stderr)
        return exc.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
