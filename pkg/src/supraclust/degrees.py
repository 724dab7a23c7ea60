"""Degrees and strengths of node-layer pairs and of nodes across layers.

Every quantity is first computed as a vector over the supra index ``h`` and
then read at the requested position; per-node totals sum that vector over
layers.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from .network import MultilayerNetwork

Direction = Literal["in", "out", "total", "bilateral"]
DIRECTIONS: tuple[str, ...] = ("in", "out", "total", "bilateral")


def _check_direction(variant: str) -> None:
    if variant not in DIRECTIONS:
        raise ValueError(f"unknown direction {variant!r}; expected one of {DIRECTIONS}")


def _row_stats(w: np.ndarray, a: np.ndarray, variant: str) -> np.ndarray:
    if variant == "in":
        return w.sum(axis=0)
    if variant == "out":
        return w.sum(axis=1)
    if variant == "total":
        return w.sum(axis=0) + w.sum(axis=1)
    # (WA + AW)_hh / 2 == sum_k (w_hk a_kh + a_hk w_kh) / 2; with w = a this is (A^2)_hh
    return (w * a.T + a * w.T).sum(axis=1) / 2


def degree_vector(net: MultilayerNetwork, variant: Direction = "total") -> np.ndarray:
    """Degree of every node-layer pair, indexed by supra position (int64)."""
    _check_direction(variant)

    def compute():
        a = net.adjacency
        out = np.rint(_row_stats(a, a, variant)).astype(np.int64)
        out.setflags(write=False)
        return out
    return net.memo(("degree", variant), compute)


def strength_vector(net: MultilayerNetwork, variant: Direction = "total",
                    weights: np.ndarray | None = None) -> np.ndarray:
    """Strength of every node-layer pair, indexed by supra position.

    ``weights`` substitutes another matrix with the same zero pattern (e.g. a
    normalized copy) for the raw weights.
    """
    _check_direction(variant)
    if weights is not None:
        return _row_stats(np.asarray(weights, float), net.adjacency, variant)

    def compute():
        out = _row_stats(net.weights, net.adjacency, variant)
        out.setflags(write=False)
        return out
    return net.memo(("strength", variant), compute)


def node_layer_degree(net: MultilayerNetwork, i: int, a: int, variant: Direction = "total") -> int:
    return int(degree_vector(net, variant)[net.flat_index(i, a)])


def node_layer_strength(net: MultilayerNetwork, i: int, a: int, variant: Direction = "total") -> float:
    return float(strength_vector(net, variant)[net.flat_index(i, a)])


def node_degree(net: MultilayerNetwork, i: int, variant: Direction = "total") -> int:
    """Degree of node ``i`` summed over all layers."""
    net._check_node(i)
    return int(by_node_layer(net, degree_vector(net, variant))[i].sum())


def node_strength(net: MultilayerNetwork, i: int, variant: Direction = "total") -> float:
    """Strength of node ``i`` summed over all layers."""
    net._check_node(i)
    return float(by_node_layer(net, strength_vector(net, variant))[i].sum())


def by_node_layer(net: MultilayerNetwork, vec: np.ndarray) -> np.ndarray:
    """Reshape a supra-indexed vector into an ``(N, L)`` table."""
    return np.asarray(vec).reshape(net.n_layers, net.n_nodes).T
