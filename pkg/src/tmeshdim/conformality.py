"""Conformality matrices of T-connected components and spline-space dimensions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .exact import ExactMatrix, PreconditionError, format_rational, rank, vandermonde
from .mesh.components import GeneralizedTComponent, mesh_stats, t_component, to_generalized
from .mesh.model import Point, TMesh


class NotDiagonalizableError(ValueError):
    """The closed diagonalizable dimension formula does not apply."""


@dataclass(frozen=True)
class ConformalityMatrix:
    matrix: ExactMatrix
    row_blocks: tuple[tuple[int, int, int], ...]  # (edge index, first row, stop row)
    columns: tuple[Point, ...]
    degree: int

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def column_index(self) -> dict[Point, int]:
        return {p: j for j, p in enumerate(self.columns)}

    def to_json(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "shape": list(self.matrix.shape),
            "rows": [[str(format_rational(x)) for x in r] for r in self.matrix.rows],
            "row_blocks": [{"edge": e, "rows": [a, b]} for e, a, b in self.row_blocks],
            "columns": [[format_rational(x), format_rational(y)] for x, y in self.columns],
        }


def build_matrix(gt: GeneralizedTComponent, d: int) -> ConformalityMatrix:
    """One block of d+1 Vandermonde rows per edge over its along-edge coordinates.

    Columns are all vertices of the component in lexicographic order; a
    vertex shared by two edges gets entries from both blocks.
    """
    if d < 1:
        raise PreconditionError("degree must be at least 1")
    cols = gt.vertices
    index = {p: j for j, p in enumerate(cols)}
    rows: list[list[Any]] = []
    blocks = []
    for i, e in enumerate(gt.edges):
        v = vandermonde(e.vertices, d)
        first = len(rows)
        for p in range(d + 1):
            row = [0] * len(cols)
            for k, pt in enumerate(e.points()):
                row[index[pt]] = v[p, k]
            rows.append(row)
        blocks.append((i, first, len(rows)))
    return ConformalityMatrix(ExactMatrix(rows, ncols=len(cols)), tuple(blocks), cols, d)


def component_rank(gt: GeneralizedTComponent, d: int) -> int:
    """Conformality rank, summed over connected blocks."""
    return sum(rank(build_matrix(gt.subset(b), d).matrix) for b in gt.blocks())


def cvs_dim(gt: GeneralizedTComponent, d: int) -> int:
    return len(gt.vertices) - component_rank(gt, d)


def vanishable_edges(gt: GeneralizedTComponent, d: int) -> list[int]:
    """Edges with at most d+1 vertices; their cofactors are forced to zero."""
    return [i for i, e in enumerate(gt.edges) if e.n <= d + 1]


def vanishable_warnings(gt: GeneralizedTComponent, d: int) -> list[str]:
    return [f"vanishable edge {gt.edges[i].label()} has {gt.edges[i].n} <= d+1 = {d + 1} vertices"
            for i in vanishable_edges(gt, d)]


def mesh_component(mesh: TMesh) -> GeneralizedTComponent:
    return to_generalized(t_component(mesh))


def spline_dim(mesh: TMesh, d: int) -> int:
    """(d+1)^2 + c(d+1) + n_v - rank(M)."""
    st = mesh_stats(mesh)
    return (d + 1) ** 2 + st["c"] * (d + 1) + st["n_v"] - component_rank(mesh_component(mesh), d)


def diag_dim(mesh: TMesh, d: int) -> int:
    """(d+1)^2 + (c-t)(d+1) + n_v, valid only for diagonalizable meshes."""
    from .partition import is_diagonalizable

    ok, _ = is_diagonalizable(mesh_component(mesh), d)
    if not ok:
        raise NotDiagonalizableError("mesh is not diagonalizable for this degree")
    st = mesh_stats(mesh)
    return (d + 1) ** 2 + (st["c"] - st["t"]) * (d + 1) + st["n_v"]


def dim_via_cndc(mesh: TMesh, d: int) -> int:
    """(d+1)^2 + (c+s-t)(d+1) + n_v - rank(M_CNDC)."""
    from .partition import complete_partition

    gt = mesh_component(mesh)
    cp = complete_partition(gt, d)
    st = mesh_stats(mesh)
    r1 = component_rank(gt.subset(cp.cndc), d)
    return (d + 1) ** 2 + (st["c"] + cp.s - st["t"]) * (d + 1) + st["n_v"] - r1
