"""Random networks shaped like the World Input-Output Database tables."""

from __future__ import annotations

import csv
import os

import numpy as np

from .network import MultilayerNetwork

WIOD_COUNTRIES = (
    "AUS", "AUT", "BEL", "BGR", "BRA", "CAN", "CHE", "CHN", "CYP", "CZE", "DEU",
    "DNK", "ESP", "EST", "FIN", "FRA", "GBR", "GRC", "HRV", "HUN", "IDN", "IND",
    "IRL", "ITA", "JPN", "KOR", "LTU", "LUX", "LVA", "MEX", "MLT", "NLD", "NOR",
    "POL", "PRT", "ROU", "RUS", "SVK", "SVN", "SWE", "TUR", "TWN", "USA", "ROW",
)

WIOD_SECTORS = (
    "A01", "A02", "A03", "B", "C10-C12", "C13-C15", "C16", "C17", "C18", "C19",
    "C20", "C21", "C22", "C23", "C24", "C25", "C26", "C27", "C28", "C29", "C30",
    "C31_C32", "C33", "D35", "E36", "E37-E39", "F", "G45", "G46", "G47", "H49",
    "H50", "H51", "H52", "H53", "I", "J58", "J59_J60", "J61", "J62_J63", "K64",
    "K65", "K66", "L68", "M69_M70", "M71", "M72", "M73", "M74_M75", "N", "O84",
    "P85", "Q", "RS", "T", "U",
)


def random_weights(order: int, density: float, rng: np.random.Generator,
                   lognormal_sigma: float = 2.0) -> np.ndarray:
    """Supra matrix with i.i.d. arcs of probability ``density`` and lognormal weights."""
    w = np.where(rng.random((order, order)) < density,
                 rng.lognormal(0.0, lognormal_sigma, (order, order)), 0.0)
    np.fill_diagonal(w, 0.0)
    return w


def wiod_like(seed: int = 2014, density: float = 0.2, isolated: tuple[str, ...] = ("U",)) -> MultilayerNetwork:
    """44 countries x 56 sectors with the listed sectors left fully isolated."""
    rng = np.random.default_rng(seed)
    n, L = len(WIOD_COUNTRIES), len(WIOD_SECTORS)
    w = random_weights(n * L, density, rng)
    for label in isolated:
        a = WIOD_SECTORS.index(label)
        w[a * n:(a + 1) * n, :] = 0.0
        w[:, a * n:(a + 1) * n] = 0.0
    return MultilayerNetwork(w, n, WIOD_COUNTRIES, WIOD_SECTORS)


def write_wiod_like_csv(path: str | os.PathLike, seed: int = 2014, density: float = 0.2) -> MultilayerNetwork:
    """Write :func:`wiod_like` as canonical CSV.

    The isolated sector still appears in the file through own-sector
    (self-loop) flows, which ingestion drops, as with the real tables.
    """
    from .ingest import write_edges

    net = wiod_like(seed, density)
    write_edges(net, path)
    a = WIOD_SECTORS.index("U")
    with open(path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for c in WIOD_COUNTRIES:
            writer.writerow((c, WIOD_SECTORS[a], c, WIOD_SECTORS[a], "1.5"))
    return net
