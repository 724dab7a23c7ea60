"""Clustering coefficients for weighted, directed, node-aligned multilayer networks."""

from .clustering import (
    FAMILIES,
    ClusteringReport,
    Coefficients,
    clustering_report,
    coefficients,
    global_coefficient,
    layer_coefficient,
    local_arith,
    local_coefficient,
    local_geom,
    local_prod,
    monoplex_average,
    monoplex_baseline,
    node_coefficient,
)
from .degrees import (
    degree_vector,
    node_degree,
    node_layer_degree,
    node_layer_strength,
    node_strength,
    strength_vector,
)
from .errors import (
    DegenerateInputError,
    DuplicateEdgeError,
    FormatError,
    OversizeError,
    SupraclustError,
)
from .ingest import (
    EdgeRecord,
    IngestReport,
    build_network,
    load_network,
    parse_edges,
    prune_isolated_layers,
    write_edges,
)
from .network import MultilayerNetwork, NormalizationScheme, flat_index, from_blocks, unflatten
from .report import Ranking, densities, rank, spearman, strength_breakdown
from .triangles import TriangleCensus, triangle_census, triangle_count, triangle_oracle

__version__ = "0.1.0"
