"""Densest-subgraph toolkit: exact, greedy, and prediction-augmented solvers.

The package finds dense regions of a graph under three objectives
(edges-per-node, two-sided directed density, and a clique-oriented
edges-squared-per-node variant) and ships three solver families:

- exact maximum-flow solvers plus brute-force oracles for small graphs,
- Charikar's linear-time peeling with a proven half-approximation,
- learning-augmented solvers that grow a predicted node set and keep a
  (1 - 3*eps)-style fraction of the optimum density when the prediction
  misses at most an eps share of the true solution.

All densities and guarantee checks run in exact rational arithmetic.
The ``densekit`` command line exposes solving, benchmarking, guarantee
verification, feature export, and prediction corruption.
"""

from __future__ import annotations

from .augmented import (
    as_epsilon,
    augment_clique,
    augment_directed,
    augment_undirected,
    augmentation_budget,
)
from .bench import ComparisonSummary, GraphOutcome, RunRecord, bench_corpus, bench_one_graph
from .errors import (
    ContractViolation,
    DensekitError,
    EmptyPredictionError,
    EmptySetError,
    NoEdgesError,
    ParseError,
    RefusedError,
    UnknownNodeError,
)
from .exact import brute_force_densest, brute_force_directed_densest, exact_densest_subgraph
from .generators import gnm_graph, gnp_graph, planted_dense_graph
from .graph import (
    Density,
    Graph,
    NodeSet,
    clique_density,
    cross_edge_count,
    density,
    directed_density,
    induced_edge_count,
    load_graph,
    load_node_set,
    parse_edge_list,
    serialize_edge_list,
)
from .peeling import PeelTrace, charikar_peel
from .predictions import (
    FeatureRow,
    PredictionSet,
    corrupt_directed_solution,
    corrupt_solution,
    export_features,
    load_predictions,
    serialize_features,
    serialize_predictions,
)
from .verify import VerifyReport, run_property_suite

__version__ = "0.1.0"

__all__ = [
    "ComparisonSummary",
    "ContractViolation",
    "Density",
    "DensekitError",
    "EmptyPredictionError",
    "EmptySetError",
    "FeatureRow",
    "Graph",
    "GraphOutcome",
    "NoEdgesError",
    "NodeSet",
    "ParseError",
    "PeelTrace",
    "PredictionSet",
    "RefusedError",
    "RunRecord",
    "UnknownNodeError",
    "VerifyReport",
    "as_epsilon",
    "augment_clique",
    "augment_directed",
    "augment_undirected",
    "augmentation_budget",
    "bench_corpus",
    "bench_one_graph",
    "brute_force_densest",
    "brute_force_directed_densest",
    "charikar_peel",
    "clique_density",
    "corrupt_directed_solution",
    "corrupt_solution",
    "cross_edge_count",
    "density",
    "directed_density",
    "exact_densest_subgraph",
    "export_features",
    "gnm_graph",
    "gnp_graph",
    "induced_edge_count",
    "load_graph",
    "load_node_set",
    "load_predictions",
    "parse_edge_list",
    "planted_dense_graph",
    "run_property_suite",
    "serialize_edge_list",
    "serialize_features",
    "serialize_predictions",
    "__version__",
]
