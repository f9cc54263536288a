"""Ordered partitions of a T-connected component and the complete partition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .conformality import build_matrix
from .exact import ExactMatrix, rank, vandermonde
from .mesh.components import GeneralizedTComponent
from .mesh.model import Point


class PartitionError(ValueError):
    """The given parts do not partition the edge set."""


@dataclass(frozen=True)
class CompletePartition:
    """Split into a completely non-diagonalizable core and a peelable remainder.

    ``removed`` lists edges in the order they were peeled, with the mono
    count that qualified each one in ``removal_mono``. ``order`` is a
    t-partition order of the removed edges in which every reduced edge
    keeps at least d+1 vertices.
    """

    cndc: tuple[int, ...]
    removed: tuple[int, ...]
    removal_mono: tuple[int, ...]
    order: tuple[int, ...]
    degree: int
    t: int

    @property
    def s(self) -> int:
        return len(self.cndc)

    @property
    def diagonalizable_part(self) -> tuple[int, ...]:
        return self.order


def complete_partition(gt: GeneralizedTComponent, d: int,
                       removal_order: Sequence[int] | None = None) -> CompletePartition:
    """Peel edges with at least d+1 mono-vertices about the remainder until none qualifies.

    Sweeps visit edges in ``removal_order`` (input order by default). The
    remainder does not depend on this order.
    """
    n = len(gt)
    sweep = list(range(n)) if removal_order is None else list(removal_order)
    if sorted(sweep) != list(range(n)):
        raise PartitionError("removal_order must be a permutation of the edge indices")
    remaining = set(range(n))
    removed: list[int] = []
    mono: list[int] = []
    changed = True
    while changed:
        changed = False
        for i in sweep:
            if i in remaining:
                m = gt.mono_count(i, remaining)
                if m >= d + 1:
                    remaining.discard(i)
                    removed.append(i)
                    mono.append(m)
                    changed = True
    return CompletePartition(tuple(sorted(remaining)), tuple(removed), tuple(mono),
                             _layered_order(gt, d), d, n)


def _layered_order(gt: GeneralizedTComponent, d: int) -> tuple[int, ...]:
    # Peel whole layers at once. An edge of layer k keeps its qualifying
    # mono-vertices against every edge of layers >= k, so listing deeper
    # layers first gives each reduced edge at least d+1 vertices.
    remaining = set(range(len(gt)))
    layers: list[list[int]] = []
    while True:
        layer = [i for i in sorted(remaining) if gt.mono_count(i, remaining) >= d + 1]
        if not layer:
            break
        layers.append(layer)
        remaining.difference_update(layer)
    return tuple(i for layer in reversed(layers) for i in layer)


def is_diagonalizable(gt: GeneralizedTComponent, d: int) -> tuple[bool, tuple[int, ...] | None]:
    cp = complete_partition(gt, d)
    return (not cp.cndc, cp.order if not cp.cndc else None)


@dataclass(frozen=True)
class KPartition:
    parts: tuple[tuple[int, ...], ...]
    # vertices owned by each part: those of its edges not claimed by an earlier part
    reduced_vertices: tuple[tuple[Point, ...], ...]

    @property
    def k(self) -> int:
        return len(self.parts)


def k_partition(gt: GeneralizedTComponent, ordered_parts: Iterable[Iterable[int]]) -> KPartition:
    parts = tuple(tuple(p) for p in ordered_parts)
    flat = [i for p in parts for i in p]
    if sorted(flat) != list(range(len(gt))) or any(not p for p in parts):
        raise PartitionError("parts must be nonempty and partition the edge indices")
    claimed: set[Point] = set()
    reduced = []
    for p in parts:
        own = {pt for i in p for pt in gt.edges[i].points()} - claimed
        reduced.append(tuple(sorted(own)))
        claimed |= own
    return KPartition(parts, tuple(reduced))


def reduced_edge_counts(gt: GeneralizedTComponent, order: Sequence[int]) -> list[int]:
    """n of each reduced edge of the t-partition given by ``order``."""
    kp = k_partition(gt, [[i] for i in order])
    return [len(v) for v in kp.reduced_vertices]


def phi_matrices(gt: GeneralizedTComponent, kp: KPartition, d: int) -> list[ExactMatrix]:
    """Per part: its edges' equations restricted to the vertices the part owns."""
    cm = build_matrix(gt, d)
    col = cm.column_index()
    out = []
    for part, verts in zip(kp.parts, kp.reduced_vertices):
        rows = [r for i in part for r in range(cm.row_blocks[i][1], cm.row_blocks[i][2])]
        out.append(cm.matrix.submatrix(rows, [col[p] for p in verts]))
    return out


def rank_identity_check(gt: GeneralizedTComponent, d: int) -> dict[str, object]:
    """Compare rank(M) with (t-s)(d+1) + rank(M_CNDC), both from scratch."""
    cp = complete_partition(gt, d)
    lhs = rank(build_matrix(gt, d).matrix)
    rhs = (cp.t - cp.s) * (d + 1) + rank(build_matrix(gt.subset(cp.cndc), d).matrix)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def reduced_edge_blocks(gt: GeneralizedTComponent, order: Sequence[int], d: int) -> list[ExactMatrix]:
    """Vandermonde block of each reduced edge along ``order``."""
    kp = k_partition(gt, [[i] for i in order])
    out = []
    for (i,), verts in zip(kp.parts, kp.reduced_vertices):
        e = gt.edges[i]
        coords = [p[0] if e.orient == "h" else p[1] for p in verts]
        out.append(vandermonde(coords, d))
    return out
