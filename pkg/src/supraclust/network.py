"""Node-aligned multilayer network stored as a dense supra-adjacency matrix.

Indices are zero-based throughout. Node ``i`` on layer ``a`` lives at row and
column ``h = n_nodes * a + i`` of the supra matrix, so the ``(a, b)`` block
holds the arcs leaving layer ``a`` and entering layer ``b``.
"""

from __future__ import annotations

import enum
from typing import Callable, Iterator, Sequence

import numpy as np

from .errors import DegenerateInputError


def flat_index(i: int, a: int, n_nodes: int, n_layers: int | None = None) -> int:
    """Position of node ``i`` on layer ``a`` in the supra matrix."""
    if n_nodes < 1:
        raise IndexError(f"n_nodes must be positive, got {n_nodes}")
    if not 0 <= i < n_nodes:
        raise IndexError(f"node index {i} out of range for {n_nodes} nodes")
    if a < 0 or (n_layers is not None and a >= n_layers):
        raise IndexError(f"layer index {a} out of range for {n_layers} layers")
    return n_nodes * a + i


def unflatten(h: int, n_nodes: int, n_layers: int | None = None) -> tuple[int, int]:
    """Inverse of :func:`flat_index`: returns ``(node, layer)``."""
    if n_nodes < 1:
        raise IndexError(f"n_nodes must be positive, got {n_nodes}")
    if h < 0 or (n_layers is not None and h >= n_nodes * n_layers):
        raise IndexError(f"flat index {h} out of range")
    a, i = divmod(h, n_nodes)
    return i, a


class NormalizationScheme(str, enum.Enum):
    NONE = "none"
    GLOBAL_MAX = "global-max"
    GLOBAL_MAX_CUBE_ROOT = "global-max-cube-root"


class MultilayerNetwork:
    """Immutable weighted directed multilayer network.

    Parameters
    ----------
    weights : array_like, shape (N*L, N*L)
        Supra-adjacency matrix. Entry ``(h, k)`` is the weight of the arc from
        supra-index ``h`` to ``k``; zero means no arc.
    n_nodes : int, optional
        Number of nodes ``N``. Inferred from ``node_labels`` when omitted.
    node_labels, layer_labels : sequence of str, optional
        Identifiers; default to ``"0", "1", ...``.

    Intra-layer self-loops (diagonal of the supra matrix) are not part of the
    model and are rejected. Inter-layer arcs between a node and its own
    counterpart on another layer are allowed.
    """

    def __init__(
        self,
        weights,
        n_nodes: int | None = None,
        node_labels: Sequence[str] | None = None,
        layer_labels: Sequence[str] | None = None,
    ):
        w = np.array(weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"supra matrix must be square, got shape {w.shape}")
        order = w.shape[0]
        if n_nodes is None:
            if node_labels is not None:
                n_nodes = len(node_labels)
            elif layer_labels is not None and len(layer_labels) > 0:
                n_nodes = order // len(layer_labels)
            else:
                n_nodes = order
        if n_nodes < 1 or order % n_nodes:
            raise ValueError(f"order {order} is not a multiple of n_nodes={n_nodes}")
        n_layers = order // n_nodes

        node_labels = [str(x) for x in (node_labels if node_labels is not None else range(n_nodes))]
        layer_labels = [str(x) for x in (layer_labels if layer_labels is not None else range(n_layers))]
        if len(node_labels) != n_nodes or len(layer_labels) != n_layers:
            raise ValueError(
                f"label counts ({len(node_labels)}, {len(layer_labels)}) do not match "
                f"N={n_nodes}, L={n_layers}"
            )
        if len(set(node_labels)) != n_nodes:
            raise ValueError("duplicate node labels")
        if len(set(layer_labels)) != n_layers:
            raise ValueError("duplicate layer labels")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diagonal(w) != 0):
            raise ValueError("intra-layer self-loops are not allowed (nonzero supra diagonal)")

        w.setflags(write=False)
        self._w = w
        self._n = n_nodes
        self._l = n_layers
        self._node_labels = tuple(node_labels)
        self._layer_labels = tuple(layer_labels)
        self._memo: dict = {}

    # -- basic shape ------------------------------------------------------
    @property
    def weights(self) -> np.ndarray:
        """Read-only supra-adjacency matrix."""
        return self._w

    @property
    def n_nodes(self) -> int:
        return self._n

    @property
    def n_layers(self) -> int:
        return self._l

    @property
    def order(self) -> int:
        return self._n * self._l

    @property
    def node_labels(self) -> tuple[str, ...]:
        return self._node_labels

    @property
    def layer_labels(self) -> tuple[str, ...]:
        return self._layer_labels

    def __repr__(self) -> str:
        return (
            f"MultilayerNetwork(N={self._n}, L={self._l}, "
            f"arcs={int(np.count_nonzero(self._w))})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilayerNetwork):
            return NotImplemented
        return (
            self._node_labels == other._node_labels
            and self._layer_labels == other._layer_labels
            and np.array_equal(self._w, other._w)
        )

    __hash__ = object.__hash__

    # -- indexing ---------------------------------------------------------
    def flat_index(self, i: int, a: int) -> int:
        return flat_index(i, a, self._n, self._l)

    def unflatten(self, h: int) -> tuple[int, int]:
        return unflatten(h, self._n, self._l)

    def node_position(self, label: str) -> int:
        try:
            return self._node_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown node {label!r}") from None

    def layer_position(self, label: str) -> int:
        try:
            return self._layer_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown layer {label!r}") from None

    def _check_layer(self, a: int) -> None:
        if not 0 <= a < self._l:
            raise IndexError(f"layer index {a} out of range for {self._l} layers")

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self._n:
            raise IndexError(f"node index {i} out of range for {self._n} nodes")

    def block(self, a: int, b: int) -> np.ndarray:
        """Weights of the arcs from layer ``a`` to layer ``b`` (an N x N view)."""
        self._check_layer(a)
        self._check_layer(b)
        n = self._n
        return self._w[a * n:(a + 1) * n, b * n:(b + 1) * n]

    # -- derived matrices -------------------------------------------------
    def memo(self, key, compute: Callable[[], object]):
        """Cache a quantity derived from this (immutable) network."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value

    @property
    def adjacency(self) -> np.ndarray:
        """Binary supra-adjacency matrix as float64 (0/1)."""
        def compute():
            a = (self._w > 0).astype(np.float64)
            a.setflags(write=False)
            return a
        return self.memo("adjacency", compute)

    def binarize(self) -> MultilayerNetwork:
        return self._derive(self.adjacency)

    def normalize(self, scheme: NormalizationScheme | str = NormalizationScheme.GLOBAL_MAX) -> MultilayerNetwork:
        """Rescale weights by the single largest entry of the supra matrix.

        ``global-max`` divides every weight by the maximum; ``global-max-cube-root``
        additionally takes the cube root. Raises :class:`DegenerateInputError`
        on an all-zero network.
        """
        scheme = NormalizationScheme(scheme)
        if scheme is NormalizationScheme.NONE:
            return self
        return self._derive(self.normalized_weights(scheme))

    def normalized_weights(self, scheme: NormalizationScheme | str) -> np.ndarray:
        scheme = NormalizationScheme(scheme)
        if scheme is NormalizationScheme.NONE:
            return self._w

        def compute():
            top = self._w.max() if self._w.size else 0.0
            if top <= 0:
                raise DegenerateInputError("cannot normalize an all-zero network")
            out = self._w / top
            if scheme is NormalizationScheme.GLOBAL_MAX_CUBE_ROOT:
                out = np.cbrt(out)
            out.setflags(write=False)
            return out
        return self.memo(("normalized", scheme), compute)

    def _derive(self, weights: np.ndarray) -> MultilayerNetwork:
        return MultilayerNetwork(weights, self._n, self._node_labels, self._layer_labels)

    # -- structural transforms -------------------------------------------
    def layer_network(self, a: int) -> MultilayerNetwork:
        """The intra-layer block of layer ``a`` as a standalone single-layer network."""
        return MultilayerNetwork(self.block(a, a), self._n, self._node_labels, [self._layer_labels[a]])

    def select_layers(self, keep: Sequence[int]) -> MultilayerNetwork:
        """Sub-network on the given layers (in the given order)."""
        keep = list(keep)
        for a in keep:
            self._check_layer(a)
        idx = np.concatenate([np.arange(a * self._n, (a + 1) * self._n) for a in keep]) if keep else np.array([], int)
        return MultilayerNetwork(
            self._w[np.ix_(idx, idx)], self._n, self._node_labels, [self._layer_labels[a] for a in keep]
        )

    def permute_nodes(self, perm: Sequence[int]) -> MultilayerNetwork:
        """Relabel nodes so that new node ``p`` is old node ``perm[p]`` on every layer."""
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self._n)):
            raise ValueError("not a permutation of the nodes")
        idx = (np.arange(self._l)[:, None] * self._n + perm[None, :]).ravel()
        return MultilayerNetwork(
            self._w[np.ix_(idx, idx)], self._n, [self._node_labels[p] for p in perm], self._layer_labels
        )

    def arcs(self) -> Iterator[tuple[int, int, int, int, float]]:
        """Yield ``(origin_node, origin_layer, dest_node, dest_layer, weight)`` for every arc."""
        rows, cols = np.nonzero(self._w)
        for h, k in zip(rows.tolist(), cols.tolist()):
            a, i = divmod(h, self._n)
            b, j = divmod(k, self._n)
            yield i, a, j, b, float(self._w[h, k])


def from_blocks(blocks, node_labels=None, layer_labels=None) -> MultilayerNetwork:
    """Assemble a network from an L x L nested list of N x N blocks."""
    return MultilayerNetwork(np.block([[np.asarray(b, float) for b in row] for row in blocks]),
                             len(np.asarray(blocks[0][0])), node_labels, layer_labels)
