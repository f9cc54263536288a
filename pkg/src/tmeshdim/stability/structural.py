"""Structural isomorphism of T-meshes and structural similarity of components."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..mesh.components import GeneralizedTComponent
from ..mesh.model import LEdge, TMesh

DEFAULT_BUDGET = 10**6


class SearchBudgetExceeded(RuntimeError):
    """The similarity search visited more nodes than allowed."""

    def __init__(self, budget: int):
        super().__init__(f"similarity search exceeded its budget of {budget} nodes")
        self.budget = budget


@dataclass(frozen=True)
class EdgeMap:
    """``mapping[i]`` is the index in the target of source edge ``i``."""

    mapping: tuple[int, ...]
    branch: str = "direct"

    def __len__(self) -> int:
        return len(self.mapping)

    def to_json(self) -> dict[str, object]:
        return {"branch": self.branch, "mapping": list(self.mapping)}


_POINT_MAPS: dict[str, Callable[[Fraction, Fraction], tuple[Fraction, Fraction]]] = {
    "identity": lambda x, y: (x, y),
    "transpose": lambda x, y: (y, x),
    "rot90": lambda x, y: (-y, x),
    "rot270": lambda x, y: (y, -x),
}


def _edge_key(e: LEdge) -> tuple:
    return (e.orient, e.line, e.start, e.end)


def _image_key(e: LEdge, how: str) -> tuple:
    f = _POINT_MAPS[how]
    seg = e.segment
    p, q = f(*seg.point(e.start)), f(*seg.point(e.end))
    if p[1] == q[1]:
        return ("h", p[1], min(p[0], q[0]), max(p[0], q[0]))
    return ("v", p[0], min(p[1], q[1]), max(p[1], q[1]))


def _positional(edges: tuple[LEdge, ...]) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {"h": [], "v": []}
    for i in sorted(range(len(edges)), key=lambda i: (edges[i].line, edges[i].start)):
        out[edges[i].orient].append(i)
    return out


def _same_order(a: list[Fraction], b: list[Fraction]) -> bool:
    n = len(a)
    return all((a[i] < a[j]) == (b[i] < b[j]) and (a[i] == a[j]) == (b[i] == b[j])
               for i in range(n) for j in range(i + 1, n))


def _try_branch(a: TMesh, b: TMesh) -> list[int] | None:
    ea, eb = a.l_edges, b.l_edges
    if len(ea) != len(eb):
        return None
    pa, pb = _positional(ea), _positional(eb)
    mapping = [0] * len(ea)
    for o in "hv":
        if len(pa[o]) != len(pb[o]):
            return None
        for i, j in zip(pa[o], pb[o]):
            mapping[i] = j
        if not _same_order([ea[i].line for i in pa[o]], [eb[j].line for j in pb[o]]):
            return None
    for i, e in enumerate(ea):
        if e.kind != eb[mapping[i]].kind:
            return None
    sa = [e.segment for e in ea]
    sb = [e.segment for e in eb]
    for i in range(len(ea)):
        for j in range(i + 1, len(ea)):
            if sa[i].crosses(sa[j]) != sb[mapping[i]].crosses(sb[mapping[j]]):
                return None
    return mapping


def structurally_isomorphic(a: TMesh, b: TMesh) -> EdgeMap | None:
    """Edge bijection preserving kinds, crossings and per-axis coordinate order.

    Indices refer to ``l_edges`` of each mesh. The direct branch maps
    horizontal to horizontal; when it fails the axis-swapped branch is tried,
    which maps horizontal to vertical edges of ``b``. Under a swap one of the
    two axis orders may be reversed, as happens for a quarter turn, so the
    transpose and both quarter turns of ``b`` are tried.
    """
    for how in ("identity", "transpose", "rot90", "rot270"):
        bb = b.transformed(how)
        m = _try_branch(a, bb)
        if m is None:
            continue
        back = {_image_key(e, how): j for j, e in enumerate(b.l_edges)}
        mapping = tuple(back[_edge_key(bb.l_edges[k])] for k in m)
        return EdgeMap(mapping, "direct" if how == "identity" else f"axis-swap:{how}")
    return None


def check_isomorphism(a: TMesh, b: TMesh, em: EdgeMap) -> bool:
    """Independent check that ``em`` preserves kinds and crossings."""
    ea, eb = a.l_edges, b.l_edges
    if sorted(em.mapping) != list(range(len(eb))) or len(ea) != len(eb):
        return False
    if any(ea[i].kind != eb[j].kind for i, j in enumerate(em.mapping)):
        return False
    swapped = em.branch != "direct"
    if any((ea[i].orient == eb[j].orient) == swapped for i, j in enumerate(em.mapping)):
        return False
    for i in range(len(ea)):
        for j in range(i + 1, len(ea)):
            if ea[i].segment.crosses(ea[j].segment) != eb[em.mapping[i]].segment.crosses(
                    eb[em.mapping[j]].segment):
                return False
    return True


def _adjacency(gt: GeneralizedTComponent) -> list[set[int]]:
    return [{j for j in range(len(gt)) if gt.intersects(i, j)} for i in range(len(gt))]


def structurally_similar(a: GeneralizedTComponent, b: GeneralizedTComponent,
                         budget: int = DEFAULT_BUDGET) -> EdgeMap | None:
    """Backtracking search for a bijection preserving n(l) and the intersection relation.

    Returns ``None`` when no map exists and raises
    :class:`SearchBudgetExceeded` when the search gives up.
    """
    n = len(a)
    if n != len(b):
        return None
    adj_a, adj_b = _adjacency(a), _adjacency(b)
    label_a = [(a.edges[i].n, len(adj_a[i])) for i in range(n)]
    label_b = [(b.edges[i].n, len(adj_b[i])) for i in range(n)]
    if sorted(label_a) != sorted(label_b):
        return None
    # visit source edges so each one (after the first of its block) has an assigned neighbour
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(range(n), key=lambda i: (-len(adj_a[i]), i)):
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        while queue:
            i = queue.pop(0)
            order.append(i)
            for j in sorted(adj_a[i]):
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
    assign: dict[int, int] = {}
    used: set[int] = set()
    visited = 0

    def extend(k: int) -> bool:
        nonlocal visited
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if j in used or label_b[j] != label_a[i]:
                continue
            visited += 1
            if visited > budget:
                raise SearchBudgetExceeded(budget)
            if all((j2 in adj_b[j]) == (i2 in adj_a[i]) for i2, j2 in assign.items()):
                assign[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    if not extend(0):
        return None
    return EdgeMap(tuple(assign[i] for i in range(n)))


def check_similarity(a: GeneralizedTComponent, b: GeneralizedTComponent, em: EdgeMap) -> bool:
    n = len(a)
    if len(b) != n or sorted(em.mapping) != list(range(n)):
        return False
    if any(a.edges[i].n != b.edges[j].n for i, j in enumerate(em.mapping)):
        return False
    return all(a.intersects(i, k) == b.intersects(em.mapping[i], em.mapping[k])
               for i in range(n) for k in range(i + 1, n))
