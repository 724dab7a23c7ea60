"""Descriptive tables for a multilayer network: densities, strength
breakdowns, rankings and rank correlations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateInputError
from .network import MultilayerNetwork


@dataclass(frozen=True)
class DensityRow:
    layer: str
    intra_density: float
    avg_inter_density: float


def densities(net: MultilayerNetwork) -> list[DensityRow]:
    """Intra-layer density and mean inter-layer density of every layer.

    The intra-layer density counts arcs in the diagonal block over the
    ``N(N-1)`` admissible positions. For each other layer ``b`` the arcs of
    blocks ``(a, b)`` and ``(b, a)`` are pooled over ``2 N^2`` positions; the
    inter-layer figure of ``a`` is the mean over the ``L - 1`` other layers
    (0 when there is a single layer).
    """
    n, L = net.n_nodes, net.n_layers
    if n < 2:
        raise DegenerateInputError("densities need at least two nodes")
    nnz = np.count_nonzero(net.weights.reshape(L, n, L, n), axis=(1, 3))
    rows = []
    for a in range(L):
        intra = nnz[a, a] / (n * (n - 1))
        if L > 1:
            pooled = [(nnz[a, b] + nnz[b, a]) / (2 * n * n) for b in range(L) if b != a]
            inter = float(np.mean(pooled))
        else:
            inter = 0.0
        rows.append(DensityRow(net.layer_labels[a], float(intra), inter))
    return rows


@dataclass(frozen=True)
class StrengthBreakdownRow:
    entity: str
    in_intra: float
    in_inter: float
    out_intra: float
    out_inter: float

    @property
    def intra_inter_ratio(self) -> float | None:
        inter = self.in_inter + self.out_inter
        return (self.in_intra + self.out_intra) / inter if inter > 0 else None

    @property
    def in_out_ratio(self) -> float | None:
        out = self.out_intra + self.out_inter
        return (self.in_intra + self.in_inter) / out if out > 0 else None


def _block_tensor(net: MultilayerNetwork) -> np.ndarray:
    # t[a, i, b, j] = weight of arc (i on a) -> (j on b)
    n, L = net.n_nodes, net.n_layers
    return net.weights.reshape(L, n, L, n)


def strength_breakdown(net: MultilayerNetwork, by: str = "node") -> list[StrengthBreakdownRow]:
    """In/out strength split into intra-layer and inter-layer arcs.

    ``by="node"`` sums each node over all layers; ``by="layer"`` sums each
    layer over all nodes.
    """
    t = _block_tensor(net)
    L = net.n_layers
    same = np.eye(L, dtype=bool)
    intra = t * same[:, None, :, None]
    inter = t * ~same[:, None, :, None]
    if by == "node":
        labels = net.node_labels
        comps = (intra.sum(axis=(0, 1, 2)), inter.sum(axis=(0, 1, 2)),
                 intra.sum(axis=(0, 2, 3)), inter.sum(axis=(0, 2, 3)))
    elif by == "layer":
        labels = net.layer_labels
        comps = (intra.sum(axis=(0, 1, 3)), inter.sum(axis=(0, 1, 3)),
                 intra.sum(axis=(1, 2, 3)), inter.sum(axis=(1, 2, 3)))
    else:
        raise ValueError(f"by must be 'node' or 'layer', got {by!r}")
    return [
        StrengthBreakdownRow(lab, *(float(c[p]) for c in comps))
        for p, lab in enumerate(labels)
    ]


def intra_strength_table(net: MultilayerNetwork) -> np.ndarray:
    """``(N, L)`` total strength of each node within each layer, intra-layer arcs only."""
    n, L = net.n_nodes, net.n_layers
    out = np.empty((n, L))
    for a in range(L):
        b = net.block(a, a)
        out[:, a] = b.sum(axis=0) + b.sum(axis=1)
    return out


@dataclass(frozen=True)
class Ranking:
    """Entities with their values and (average-tie) ranks, best first."""

    entities: tuple[str, ...]
    values: tuple[float, ...]
    ranks: tuple[float, ...]

    def rank_of(self) -> dict[str, float]:
        return dict(zip(self.entities, self.ranks))

    def __len__(self) -> int:
        return len(self.entities)


TIE_RTOL = 1e-12


def _tie_groups(vals: np.ndarray, rtol: float) -> np.ndarray:
    """Integer key per value; neighbours within ``rtol`` (relative) share a key."""
    order = np.argsort(vals, kind="stable")
    s = vals[order]
    gap = np.abs(np.diff(s)) > rtol * np.maximum(np.abs(s[1:]), np.abs(s[:-1]))
    keys = np.empty(len(vals), dtype=np.int64)
    keys[order] = np.concatenate(([0], np.cumsum(gap)))
    return keys


def rank(values: Mapping[str, float], descending: bool = True, rtol: float = TIE_RTOL) -> Ranking:
    """Rank entities by value; tied entities share the mean of their positions.

    Values that agree to a relative ``rtol`` count as tied, so rounding noise
    in the last few bits cannot reorder entities. Pass ``rtol=0`` for exact ties.
    """
    if not values:
        raise DegenerateInputError("cannot rank an empty collection")
    ents = list(values)
    vals = np.array([float(values[e]) for e in ents])
    if not np.all(np.isfinite(vals)):
        bad = [e for e, v in zip(ents, vals) if not math.isfinite(v)]
        raise ValueError(f"non-finite values for {bad[:5]}")
    keys = _tie_groups(vals, rtol)
    r = rankdata(-keys if descending else keys, method="average")
    order = sorted(range(len(ents)), key=lambda p: (r[p], ents[p]))
    return Ranking(
        tuple(ents[p] for p in order),
        tuple(float(vals[p]) for p in order),
        tuple(float(r[p]) for p in order),
    )


def spearman(r1: Ranking, r2: Ranking) -> float:
    """Pearson correlation of the two rank vectors, matched by entity."""
    a, b = r1.rank_of(), r2.rank_of()
    if set(a) != set(b):
        raise ValueError("rankings cover different entity sets")
    if len(a) < 2:
        raise DegenerateInputError("need at least two entities")
    ents = sorted(a)
    x = np.array([a[e] for e in ents])
    y = np.array([b[e] for e in ents])
    x -= x.mean()
    y -= y.mean()
    sxx, syy = x @ x, y @ y
    if sxx == 0 or syy == 0:
        raise DegenerateInputError("a ranking is constant; correlation undefined")
    rho = float((x @ y) / math.sqrt(sxx * syy))
    return max(-1.0, min(1.0, rho))
