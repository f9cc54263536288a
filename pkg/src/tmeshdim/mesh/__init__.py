from .components import (
    GeneralizedTComponent,
    GTEdge,
    IntegralTComponent,
    TComponent,
    extract_l_edges,
    integral_component,
    mesh_stats,
    t_component,
    to_generalized,
)
from .model import (
    InvalidMeshError,
    LEdge,
    MeshFormatError,
    Segment,
    TMesh,
    ValidationReport,
    Vertex,
    parse_mesh,
    validate,
)
from .random import random_mesh

__all__ = [
    "GeneralizedTComponent", "GTEdge", "IntegralTComponent", "TComponent", "extract_l_edges",
    "integral_component", "mesh_stats", "t_component", "to_generalized", "InvalidMeshError",
    "LEdge", "MeshFormatError", "Segment", "TMesh", "ValidationReport", "Vertex", "parse_mesh",
    "validate", "random_mesh",
]
