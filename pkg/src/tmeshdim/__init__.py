"""Exact dimension and stability analysis of highest-smoothness spline spaces over T-meshes."""

from .conformality import (
    ConformalityMatrix,
    NotDiagonalizableError,
    build_matrix,
    cvs_dim,
    diag_dim,
    dim_via_cndc,
    spline_dim,
)
from .exact import ExactMatrix, det, rank, rref, vandermonde
from .mesh import GeneralizedTComponent, TMesh, parse_mesh, validate
from .partition import complete_partition, is_diagonalizable, k_partition, rank_identity_check

__version__ = "0.1.0"

__all__ = [
    "ConformalityMatrix", "NotDiagonalizableError", "build_matrix", "cvs_dim", "diag_dim",
    "dim_via_cndc", "spline_dim", "ExactMatrix", "det", "rank", "rref", "vandermonde",
    "GeneralizedTComponent", "TMesh", "parse_mesh", "validate", "complete_partition",
    "is_diagonalizable", "k_partition", "rank_identity_check",
]
