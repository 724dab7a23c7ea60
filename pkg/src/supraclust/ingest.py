"""Canonical edge-list CSV input/output and network construction.

The canonical file is a UTF-8 CSV with the header::

    origin_node,origin_layer,dest_node,dest_layer,weight

one row per weighted arc. Nodes and layers are the sorted union of the labels
that appear in the file; every node exists on every layer.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import DegenerateInputError, DuplicateEdgeError, FormatError
from .network import MultilayerNetwork

log = logging.getLogger(__name__)

HEADER = ("origin_node", "origin_layer", "dest_node", "dest_layer", "weight")


@dataclass(frozen=True, slots=True)
class EdgeRecord:
    origin_node: str
    origin_layer: str
    dest_node: str
    dest_layer: str
    weight: float


@dataclass(frozen=True)
class RejectedRow:
    line: int
    reason: str
    raw: tuple[str, ...]


@dataclass
class IngestReport:
    edges_read: int = 0
    self_loops_dropped: int = 0
    duplicates_merged: int = 0
    layers_pruned: list[str] = field(default_factory=list)
    rows_rejected: int = 0
    final_N: int = 0
    final_L: int = 0

    def as_dict(self) -> dict:
        return {
            "edges_read": self.edges_read,
            "rows_rejected": self.rows_rejected,
            "self_loops_dropped": self.self_loops_dropped,
            "duplicates_merged": self.duplicates_merged,
            "layers_pruned": list(self.layers_pruned),
            "final_N": self.final_N,
            "final_L": self.final_L,
        }


def parse_edges(path: str | os.PathLike) -> tuple[list[EdgeRecord], list[RejectedRow]]:
    """Read a canonical edge-list CSV.

    Returns the parsed records and the rejected rows (with 1-based line
    numbers). A missing file raises ``FileNotFoundError``; a wrong header
    raises :class:`FormatError`.
    """
    edges: list[EdgeRecord] = []
    rejects: list[RejectedRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise FormatError(f"{path}: empty file (missing header)")
        if tuple(h.strip() for h in header) != HEADER:
            raise FormatError(f"{path}: expected header {','.join(HEADER)!r}, got {','.join(header)!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 5:
                rejects.append(RejectedRow(lineno, f"expected 5 fields, got {len(row)}", tuple(row)))
                continue
            on, ol, dn, dl, raw_w = (x.strip() for x in row)
            if not (on and ol and dn and dl):
                rejects.append(RejectedRow(lineno, "empty label", tuple(row)))
                continue
            try:
                w = float(raw_w)
            except ValueError:
                rejects.append(RejectedRow(lineno, "non-numeric weight", tuple(row)))
                continue
            if not math.isfinite(w):
                rejects.append(RejectedRow(lineno, "non-finite weight", tuple(row)))
                continue
            if w <= 0:
                rejects.append(RejectedRow(lineno, "nonpositive weight", tuple(row)))
                continue
            edges.append(EdgeRecord(on, ol, dn, dl, w))
    return edges, rejects


def build_network(
    edges: Sequence[EdgeRecord],
    merge: Literal["sum", "error"] = "sum",
) -> tuple[MultilayerNetwork, IngestReport]:
    """Build a node-aligned network from arc records.

    Intra-layer self-loops are dropped and counted. Repeated arcs are summed
    (``merge="sum"``) or rejected (``merge="error"``).
    """
    if merge not in ("sum", "error"):
        raise ValueError(f"merge must be 'sum' or 'error', got {merge!r}")
    if not edges:
        raise DegenerateInputError("no edges to build a network from")

    nodes = sorted({e.origin_node for e in edges} | {e.dest_node for e in edges})
    layers = sorted({e.origin_layer for e in edges} | {e.dest_layer for e in edges})
    node_pos = {x: p for p, x in enumerate(nodes)}
    layer_pos = {x: p for p, x in enumerate(layers)}
    n = len(nodes)

    rows = np.fromiter((n * layer_pos[e.origin_layer] + node_pos[e.origin_node] for e in edges),
                       np.int64, len(edges))
    cols = np.fromiter((n * layer_pos[e.dest_layer] + node_pos[e.dest_node] for e in edges),
                       np.int64, len(edges))
    wts = np.fromiter((e.weight for e in edges), np.float64, len(edges))

    report = IngestReport(edges_read=len(edges))
    loops = rows == cols
    report.self_loops_dropped = int(loops.sum())
    if report.self_loops_dropped:
        log.warning("dropped %d intra-layer self-loops", report.self_loops_dropped)
        rows, cols, wts = rows[~loops], cols[~loops], wts[~loops]

    order = n * len(layers)
    keys = rows * order + cols
    # sort by (cell, weight) so merged sums do not depend on input order
    perm = np.lexsort((wts, keys))
    keys, wts = keys[perm], wts[perm]
    uniq, starts, counts = np.unique(keys, return_index=True, return_counts=True)
    report.duplicates_merged = int(len(keys) - len(uniq))
    if report.duplicates_merged and merge == "error":
        dup = uniq[counts > 1]
        offending = []
        for key in dup.tolist():
            h, k = divmod(key, order)
            (a, i), (b, j) = divmod(h, n), divmod(k, n)
            offending.append((nodes[i], layers[a], nodes[j], layers[b]))
        raise DuplicateEdgeError(offending)

    w = np.zeros((order, order))
    w.flat[uniq] = np.add.reduceat(wts, starts) if len(wts) else wts
    net = MultilayerNetwork(w, n, nodes, layers)
    report.final_N, report.final_L = net.n_nodes, net.n_layers
    return net, report


def isolated_layers(net: MultilayerNetwork) -> list[int]:
    """Layers with no arc inside them and no arc to or from any other layer."""
    n = net.n_nodes
    w = net.weights
    out = []
    for a in range(net.n_layers):
        sl = slice(a * n, (a + 1) * n)
        if not w[sl, :].any() and not w[:, sl].any():
            out.append(a)
    return out


def prune_isolated_layers(net: MultilayerNetwork) -> tuple[MultilayerNetwork, list[str]]:
    drop = isolated_layers(net)
    if not drop:
        return net, []
    if len(drop) == net.n_layers:
        raise DegenerateInputError("every layer is isolated; nothing left after pruning")
    keep = [a for a in range(net.n_layers) if a not in set(drop)]
    return net.select_layers(keep), [net.layer_labels[a] for a in drop]


def load_network(
    path: str | os.PathLike,
    merge: Literal["sum", "error"] = "sum",
    prune: bool = True,
) -> tuple[MultilayerNetwork, IngestReport, list[RejectedRow]]:
    """Parse, build and (optionally) prune in one call."""
    edges, rejects = parse_edges(path)
    net, report = build_network(edges, merge=merge)
    report.rows_rejected = len(rejects)
    if prune:
        net, pruned = prune_isolated_layers(net)
        report.layers_pruned = pruned
        report.final_N, report.final_L = net.n_nodes, net.n_layers
    return net, report, rejects


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_edges(net: MultilayerNetwork, path: str | os.PathLike) -> int:
    """Serialize ``net`` to canonical CSV; returns the number of arcs written.

    Rows are ordered by ``(origin_layer, origin_node, dest_layer, dest_node)``
    using the label strings.
    """
    n = net.n_nodes
    node_rank = np.argsort(np.argsort(np.array(net.node_labels, dtype=object)))
    layer_rank = np.argsort(np.argsort(np.array(net.layer_labels, dtype=object)))
    rows, cols = np.nonzero(net.weights)
    oa, oi = np.divmod(rows, n)
    da, di = np.divmod(cols, n)
    order = np.lexsort((node_rank[di], layer_rank[da], node_rank[oi], layer_rank[oa]))
    nl, ll, w = net.node_labels, net.layer_labels, net.weights
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows(
            (nl[oi[p]], ll[oa[p]], nl[di[p]], ll[da[p]], format_float(w[rows[p], cols[p]]))
            for p in order.tolist()
        )
    return len(order)


def edges_from_arcs(net: MultilayerNetwork) -> Iterable[EdgeRecord]:
    nl, ll = net.node_labels, net.layer_labels
    for i, a, j, b, w in net.arcs():
        yield EdgeRecord(nl[i], ll[a], nl[j], ll[b], w)
