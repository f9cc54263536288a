from .cycles import (
    ConsistencyError,
    KeyCycle,
    MultiVertexGraph,
    NotApplicableError,
    assemble_key_matrix,
    edge_factors,
    key_cycle_det,
    minimal_key_cycle,
    multi_vertex_graph,
    reduced_corner_matrix,
    satisfies_key_pattern,
)
from .structural import (
    EdgeMap,
    SearchBudgetExceeded,
    check_isomorphism,
    check_similarity,
    structurally_isomorphic,
    structurally_similar,
)
from .witness import WitnessReport, sample_similar, similar_draw, witness_search

__all__ = [
    "ConsistencyError", "KeyCycle", "MultiVertexGraph", "NotApplicableError", "assemble_key_matrix",
    "edge_factors", "key_cycle_det", "minimal_key_cycle", "multi_vertex_graph",
    "reduced_corner_matrix", "satisfies_key_pattern", "EdgeMap", "SearchBudgetExceeded",
    "check_isomorphism", "check_similarity", "structurally_isomorphic", "structurally_similar",
    "WitnessReport", "sample_similar", "similar_draw", "witness_search",
]
