"""Local, node, layer and global clustering coefficients of a multilayer network.

Three families weight a triangle differently:

``arith``
    Mean of the two arc weights incident to the focal node, divided by the
    weighted count of potential triangles built from strength and degree.
``geom``
    Geometric mean of the three (max-normalized) arc weights over the count
    of potential directed triangles.
``prod``
    Product of the three max-normalized symmetrized weights over the weight of
    all connected triads centred on the focal node.

Each family is evaluated as a ratio ``numerator[h] / denominator[h]`` per
supra index. Aggregates pool numerators and denominators over the relevant
index set before dividing, so a node (or layer, or network) value is a
denominator-weighted mean of the local values it covers.

Whenever a denominator vanishes the coefficient is reported as ``0`` and
flagged; flagged entries are left out of every aggregate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .degrees import degree_vector
from .network import MultilayerNetwork, NormalizationScheme
from .triangles import cube_diagonal, symmetrized, symmetrized_square

Family = Literal["arith", "geom", "prod"]
FAMILIES: tuple[str, ...] = ("arith", "geom", "prod")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown coefficient family {family!r}; expected one of {FAMILIES}")


def _ratio(num: np.ndarray, den: np.ndarray, flagged: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=np.float64)
    ok = ~flagged
    out[ok] = num[ok] / den[ok]
    return out


@dataclass(frozen=True)
class Coefficients:
    """Numerators and denominators of one family, by supra position."""

    family: str
    n_nodes: int
    n_layers: int
    numerator: np.ndarray
    denominator: np.ndarray
    flagged: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return _ratio(self.numerator, self.denominator, self.flagged)

    def _table(self, vec: np.ndarray) -> np.ndarray:
        return vec.reshape(self.n_layers, self.n_nodes).T

    @property
    def local(self) -> np.ndarray:
        """``(N, L)`` table of local coefficients."""
        return self._table(self.values)

    @property
    def local_flags(self) -> np.ndarray:
        return self._table(self.flagged)

    def _pooled(self, axis: int | None):
        keep = ~self.flagged
        num = self._table(np.where(keep, self.numerator, 0.0))
        den = self._table(np.where(keep, self.denominator, 0.0))
        num, den = num.sum(axis=axis), den.sum(axis=axis)
        flagged = np.asarray(den <= 0)
        return _ratio(np.asarray(num, float), np.asarray(den, float), flagged), flagged

    @property
    def per_node(self) -> np.ndarray:
        return self._pooled(axis=1)[0]

    @property
    def per_node_flags(self) -> np.ndarray:
        return self._pooled(axis=1)[1]

    @property
    def per_layer(self) -> np.ndarray:
        return self._pooled(axis=0)[0]

    @property
    def per_layer_flags(self) -> np.ndarray:
        return self._pooled(axis=0)[1]

    @property
    def global_value(self) -> float:
        return float(self._pooled(axis=None)[0])

    @property
    def global_flag(self) -> bool:
        return bool(self._pooled(axis=None)[1])

    def node_weights(self) -> np.ndarray:
        """``(N, L)`` weights that express ``per_node`` as a mean of ``local``."""
        den = self._table(np.where(self.flagged, 0.0, self.denominator))
        total = den.sum(axis=1, keepdims=True)
        return np.divide(den, total, out=np.zeros_like(den), where=total > 0)


def _others_sum(x: np.ndarray) -> np.ndarray:
    """``out[h, j] = sum over k != j of x[h, k]``, using additions only."""
    before = np.zeros_like(x)
    np.cumsum(x[:, :-1], axis=1, out=before[:, 1:])
    after = np.zeros_like(x)
    np.cumsum(x[:, :0:-1], axis=1, out=after[:, -2::-1])
    return before + after


def _arith_terms(net: MultilayerNetwork):
    w_sym = symmetrized(net.weights)
    s_sym = symmetrized(net.adjacency)
    # diag(Ws @ S^2); S^2 is symmetric so the diagonal is a row-wise dot product
    num = np.einsum("ij,ij->i", w_sym, symmetrized_square(net))
    # s(d-1) - 2 s_bil == sum_k (w_hk + w_kh) (d - a_hk - a_kh), a sum of
    # nonnegative terms; avoids cancellation when one neighbour dominates
    d = degree_vector(net, "total").astype(np.float64)
    den = 2 * np.einsum("ij,ij->i", w_sym, d[:, None] - s_sym)
    return num, den, den <= 0


def _geom_terms(net: MultilayerNetwork):
    d = degree_vector(net, "total")
    d_bil = degree_vector(net, "bilateral")
    den = (2 * (d * (d - 1) - 2 * d_bil)).astype(np.float64)
    if not net.weights.any():
        return np.zeros(net.order), den, np.ones(net.order, bool)
    w_hat = net.normalized_weights(NormalizationScheme.GLOBAL_MAX_CUBE_ROOT)
    num = cube_diagonal(symmetrized(w_hat))
    return num, den, den <= 0


def _prod_terms(net: MultilayerNetwork):
    if not net.weights.any():
        z = np.zeros(net.order)
        return z, z.copy(), np.ones(net.order, bool)
    w_tilde = net.normalized_weights(NormalizationScheme.GLOBAL_MAX)
    w_sym = symmetrized(w_tilde)
    num = cube_diagonal(w_sym)
    # s^2 - sum_k (w_hk + w_kh)^2 == sum over k != l of x_k x_l with x = row of w_sym
    den = np.einsum("ij,ij->i", w_sym, _others_sum(w_sym))
    return num, den, den <= 0


_TERMS = {"arith": _arith_terms, "geom": _geom_terms, "prod": _prod_terms}


def coefficients(net: MultilayerNetwork, family: Family) -> Coefficients:
    """All local terms of one family; cached on the network."""
    _check_family(family)

    def compute():
        num, den, flagged = _TERMS[family](net)
        for arr in (num, den, flagged):
            arr.setflags(write=False)
        return Coefficients(family, net.n_nodes, net.n_layers, num, den, flagged)
    return net.memo(("clustering", family), compute)


def local_coefficient(net: MultilayerNetwork, i: int, a: int, family: Family) -> float:
    h = net.flat_index(i, a)
    c = coefficients(net, family)
    return 0.0 if c.flagged[h] else float(c.numerator[h] / c.denominator[h])


def local_arith(net: MultilayerNetwork, i: int, a: int) -> float:
    return local_coefficient(net, i, a, "arith")


def local_geom(net: MultilayerNetwork, i: int, a: int) -> float:
    return local_coefficient(net, i, a, "geom")


def local_prod(net: MultilayerNetwork, i: int, a: int) -> float:
    return local_coefficient(net, i, a, "prod")


def node_coefficient(net: MultilayerNetwork, i: int, family: Family) -> float:
    """Coefficient of node ``i`` pooled over all the layers it lies on."""
    net._check_node(i)
    return float(coefficients(net, family).per_node[i])


def layer_coefficient(net: MultilayerNetwork, a: int, family: Family) -> float:
    """Coefficient of layer ``a`` pooled over its nodes (arcs in and out of the layer count)."""
    net._check_layer(a)
    return float(coefficients(net, family).per_layer[a])


def global_coefficient(net: MultilayerNetwork, family: Family) -> float:
    return coefficients(net, family).global_value


@dataclass(frozen=True)
class ClusteringReport:
    """Coefficients of several families for one network."""

    node_labels: tuple[str, ...]
    layer_labels: tuple[str, ...]
    families: dict[str, Coefficients]

    def __getitem__(self, family: str) -> Coefficients:
        return self.families[family]


def clustering_report(net: MultilayerNetwork, families: Iterable[str] = FAMILIES) -> ClusteringReport:
    return ClusteringReport(
        net.node_labels,
        net.layer_labels,
        {f: coefficients(net, f) for f in families},
    )


def monoplex_baseline(net: MultilayerNetwork, a: int, family: Family = "geom") -> Coefficients:
    """Coefficients of layer ``a`` taken in isolation (inter-layer arcs ignored).

    Normalized families rescale by the largest weight of that layer alone.
    """
    _check_family(family)
    return coefficients(net.layer_network(a), family)


def monoplex_average(net: MultilayerNetwork, family: Family = "geom", by: str = "node"):
    """Average of the isolated-layer local coefficients.

    ``by="node"`` averages each node over the layers; ``by="layer"`` averages
    each layer over its nodes. Flagged entries are skipped. Returns
    ``(values, flags)`` where a flag marks an entity with no defined entry.
    """
    if by not in ("node", "layer"):
        raise ValueError(f"by must be 'node' or 'layer', got {by!r}")
    values = np.empty((net.n_nodes, net.n_layers))
    defined = np.empty((net.n_nodes, net.n_layers), bool)
    for a in range(net.n_layers):
        c = monoplex_baseline(net, a, family)
        values[:, a] = c.values
        defined[:, a] = ~c.flagged
    axis = 1 if by == "node" else 0
    count = defined.sum(axis=axis)
    total = np.where(defined, values, 0.0).sum(axis=axis)
    mean = np.divide(total, count, out=np.zeros(total.shape), where=count > 0)
    return mean, count == 0
