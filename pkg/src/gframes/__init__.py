"""Finite frames generated by graph Laplacians.

Build a frame from a simple graph's Laplacian eigendecomposition, then ask
the questions that matter for erasure-robust reconstruction: is the graph
walk-regular, what is the frame's spark, what do the canonical-dual norm
products look like, and is the canonical dual the best dual when a
coefficient is lost. Vertices are 0-based in this API; the edge-list file
format and all CLI reports use 1-based labels.
"""

from .exceptions import ConvergenceError, EdgeListError, EnumerationGuardError
from .graphs import (
    Graph,
    adjacency_matrix,
    degree_sequence,
    is_regular,
    laplacian_matrix,
    parse_edge_list,
    relabel_by_component,
)
from .linalg import (
    SymmetricSpectrum,
    eigh_symmetric,
    generalized_vandermonde_det,
    matrix_power_diagonal,
    moore_penrose,
    numerical_rank,
    spectral_norm,
)
from .walkreg import (
    WalkRegularityReport,
    equal_diagonal_check,
    is_walk_regular,
    is_walk_regular_definition,
)
from .frames import (
    DualCandidate,
    Frame,
    GraphFrameBundle,
    build_lg_frame,
    canonical_dual,
    dual_family_member,
    is_full_spark,
    spark,
    spark_via_components,
    unitary_equivalence_witness,
    verify_dual,
)
from .erasure import (
    VERDICT_INCONCLUSIVE,
    VERDICT_NOT_OD,
    VERDICT_OD_SINGLE,
    VERDICT_UNIQUE_ALL,
    ConstancyCertificate,
    ErasureReport,
    NonOptimalityWitness,
    SearchResult,
    canonical_products,
    canonical_verdict,
    constancy_certificate,
    d1_fast,
    d_r,
    d_r_lower_bound,
    error_operator,
    lambda1_set,
    non_optimality_witness,
    perturbation_search,
)
from . import fixtures

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "EdgeListError", "EnumerationGuardError",
    "Graph", "adjacency_matrix", "degree_sequence", "is_regular",
    "laplacian_matrix", "parse_edge_list", "relabel_by_component",
    "SymmetricSpectrum", "eigh_symmetric", "generalized_vandermonde_det",
    "matrix_power_diagonal", "moore_penrose", "numerical_rank", "spectral_norm",
    "WalkRegularityReport", "equal_diagonal_check", "is_walk_regular",
    "is_walk_regular_definition",
    "DualCandidate", "Frame", "GraphFrameBundle", "build_lg_frame",
    "canonical_dual", "dual_family_member", "is_full_spark", "spark",
    "spark_via_components", "unitary_equivalence_witness", "verify_dual",
    "VERDICT_INCONCLUSIVE", "VERDICT_NOT_OD", "VERDICT_OD_SINGLE",
    "VERDICT_UNIQUE_ALL", "ConstancyCertificate", "ErasureReport",
    "NonOptimalityWitness", "SearchResult", "canonical_products",
    "canonical_verdict", "constancy_certificate", "d1_fast", "d_r",
    "d_r_lower_bound", "error_operator", "lambda1_set",
    "non_optimality_witness", "perturbation_search",
    "fixtures",
    "__version__",
]
