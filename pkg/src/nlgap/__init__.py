"""Nonlinear spectral gap of graphs mapped into graph metrics.

Computes gamma(G, d_H, f) for a regular graph G embedded in the
shortest-path metric of a host graph H, searches the adversarial supremum
over maps f, and drives reproducible random-regular-graph experiments
(spectra, discrepancy, diameter, concentration, embedding-based bounds).

The hot kernels run through a compiled Cython extension when available and
fall back to numpy/scipy otherwise; ``nlgap.kernels.BACKEND`` names the
active lane.
"""

from .embedding import (DistortionReport, Embedding, bourgain_embed, compose_map,
                        default_reps, distortion)
from .gamma import (ClimbTrace, GammaReport, NearPairReport, PartitionStats,
                    SearchResult, SearchStrategy, VertexMap, balanced_map,
                    gamma_real, gamma_sup_estimate, gamma_value, gamma_vector,
                    in_function_class, near_pair_report, partition_stats,
                    random_map)
from .graphs import (EdgeListParseError, Graph, HalfEdgeMatching, Multigraph,
                     SamplingError, SwitchRejected, complete_graph, cycle_graph,
                     edges_between, is_simple, path_graph, petersen_graph,
                     read_edge_list, sample_configuration, sample_matching,
                     sample_simple_regular, switch_edges, write_edge_list)
from .kernels import BACKEND
from .metric import (UNREACHABLE, DisconnectedGraphError, DistanceMatrix,
                     all_pairs_distances, bfs_distances, ball_size, diameter,
                     is_connected)
from .spectral import (Spectrum, discrepancy_audit, eigensystem, eigenvalues,
                       hilbert_expander_check, lambda_bar, normalized_laplacian,
                       spectral_diameter_bound)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "__version__",
    # graphs
    "Graph", "Multigraph", "HalfEdgeMatching", "SamplingError", "SwitchRejected",
    "EdgeListParseError", "sample_matching", "sample_configuration", "is_simple",
    "sample_simple_regular", "switch_edges", "edges_between", "read_edge_list",
    "write_edge_list", "complete_graph", "cycle_graph", "path_graph",
    "petersen_graph",
    # metric
    "UNREACHABLE", "DistanceMatrix", "DisconnectedGraphError", "bfs_distances",
    "all_pairs_distances", "diameter", "ball_size", "is_connected",
    # spectral
    "Spectrum", "normalized_laplacian", "eigenvalues", "eigensystem",
    "lambda_bar", "spectral_diameter_bound", "discrepancy_audit",
    "hilbert_expander_check",
    # gamma
    "VertexMap", "PartitionStats", "GammaReport", "NearPairReport",
    "SearchStrategy", "SearchResult", "ClimbTrace", "partition_stats",
    "in_function_class", "gamma_value", "gamma_vector", "gamma_real",
    "near_pair_report", "random_map", "balanced_map", "gamma_sup_estimate",
    # embedding
    "Embedding", "DistortionReport", "default_reps", "bourgain_embed",
    "distortion", "compose_map",
]
