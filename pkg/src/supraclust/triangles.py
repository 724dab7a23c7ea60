"""Directed triangle census on the supra-graph.

The count at a node-layer pair ``h`` is half the ``h``-th diagonal entry of
``S**3`` where ``S = A + A.T`` is the symmetrized binary supra matrix.
Because ``S`` is symmetric with a zero diagonal, the closed walks
``h -> k -> l -> h`` pair up with their reversals, so the half-diagonal is
always an integer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OversizeError
from .network import MultilayerNetwork

ORACLE_MAX_ORDER = 60


def symmetrized(m: np.ndarray) -> np.ndarray:
    return m + m.T


def cube_diagonal(s: np.ndarray) -> np.ndarray:
    """``diag(s @ s @ s)`` for a symmetric matrix, with a single matrix product."""
    return np.einsum("ij,ij->i", s @ s, s)


def _closed_walks(net: MultilayerNetwork) -> np.ndarray:
    # float64 BLAS is exact here: entries of S are 0/1/2 and every partial sum
    # of S^3 stays below 8 * (NL)^2, far inside the 2**53 integer range.
    def compute():
        s = symmetrized(net.adjacency)
        sq = s @ s
        sq.setflags(write=False)
        walks = np.rint(np.einsum("ij,ij->i", sq, s)).astype(np.int64)
        walks.setflags(write=False)
        return sq, walks
    return net.memo("sym_square", compute)


def symmetrized_square(net: MultilayerNetwork) -> np.ndarray:
    """``(A + A.T)**2``, shared with the arithmetic clustering numerator."""
    return _closed_walks(net)[0]


def triangle_vector(net: MultilayerNetwork) -> np.ndarray:
    """Triangle count of every node-layer pair, by supra position."""
    return _closed_walks(net)[1] // 2


def triangle_count(net: MultilayerNetwork, i: int, a: int) -> int:
    return int(triangle_vector(net)[net.flat_index(i, a)])


@dataclass(frozen=True)
class TriangleCensus:
    """Triangle counts at every aggregation level.

    ``per_node_layer`` has shape ``(N, L)``.
    """

    per_node_layer: np.ndarray
    per_node: np.ndarray
    per_layer: np.ndarray
    total: int


def triangle_census(net: MultilayerNetwork) -> TriangleCensus:
    table = triangle_vector(net).reshape(net.n_layers, net.n_nodes).T.copy()
    return TriangleCensus(
        per_node_layer=table,
        per_node=table.sum(axis=1),
        per_layer=table.sum(axis=0),
        total=int(table.sum()),
    )


def triangle_oracle(net: MultilayerNetwork, i: int, a: int) -> int:
    """Brute-force count by enumerating every ordered pair of distinct supra indices.

    Independent of the matrix-product path; only meant for small networks.
    """
    order = net.order
    if order > ORACLE_MAX_ORDER:
        raise OversizeError(f"oracle limited to order {ORACLE_MAX_ORDER}, got {order}")
    h = net.flat_index(i, a)
    w = net.weights.tolist()
    link = [[int(w[p][q] > 0) + int(w[q][p] > 0) for q in range(order)] for p in range(order)]
    total = 0
    for k1 in range(order):
        if k1 == h or not link[h][k1]:
            continue
        for k2 in range(order):
            if k2 == h or k2 == k1:
                continue
            total += link[h][k1] * link[k1][k2] * link[k2][h]
    if total % 2:
        raise AssertionError("odd closed-walk count; symmetry broken")
    return total // 2
