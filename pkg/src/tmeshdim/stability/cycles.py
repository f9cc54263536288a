"""Multi-vertex graphs of a CNDC, minimal key cycles and their determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from ..exact import ExactMatrix, PreconditionError, lagrange_ratio, rref, vandermonde
from ..mesh.components import GeneralizedTComponent
from ..mesh.model import Point


class ConsistencyError(RuntimeError):
    """A structural guarantee of the complete partition was violated."""


class NotApplicableError(PreconditionError):
    """The closed form needs every cycle edge to carry exactly d+2 vertices."""


@dataclass(frozen=True)
class MultiVertexGraph:
    """Multi-vertices of an edge subset; arcs join neighbours along one edge."""

    gt: GeneralizedTComponent
    edges: tuple[int, ...]
    nodes: tuple[Point, ...]
    arcs: tuple[tuple[Point, Point, int], ...]

    def degree(self, p: Point) -> int:
        return sum((a == p) + (b == p) for a, b, _ in self.arcs)

    def edge_graph(self) -> dict[int, set[int]]:
        """Edges of the subset adjacent when they share a multi-vertex."""
        adj: dict[int, set[int]] = {i: set() for i in self.edges}
        for p in self.nodes:
            on = [i for i in self.gt.incidence[p] if i in adj]
            for i in on:
                adj[i].update(j for j in on if j != i)
        return adj


def multi_vertex_graph(gt: GeneralizedTComponent, cndc: Iterable[int]) -> MultiVertexGraph:
    edges = tuple(sorted(cndc))
    nodes = gt.multi_vertices(edges)
    arcs = []
    for i in edges:
        on = [p for p in gt.edges[i].points() if p in nodes]
        arcs.extend((p, q, i) for p, q in zip(on, on[1:]))
    g = MultiVertexGraph(gt, edges, tuple(sorted(nodes)), tuple(arcs))
    if edges:
        low = [p for p in g.nodes if g.degree(p) < 2]
        if low or not g.nodes:
            raise ConsistencyError(f"multi-vertices of degree < 2 in a nonempty CNDC: {low}")
    return g


@dataclass(frozen=True)
class KeyCycle:
    """Cyclic edge list l_0..l_{e-1}; ``corners[i]`` is l_{i-1} ∩ l_i."""

    gt: GeneralizedTComponent
    edges: tuple[int, ...]
    corners: tuple[Point, ...]

    @property
    def e(self) -> int:
        return len(self.edges)

    def along(self, i: int, p: Point) -> Fraction:
        return p[0] if self.gt.edges[self.edges[i]].orient == "h" else p[1]

    def others(self, i: int) -> tuple[Fraction, ...]:
        """Along-edge coordinates of l_i other than its two corners."""
        skip = {self.along(i, self.corners[i]), self.along(i, self.corners[(i + 1) % self.e])}
        return tuple(c for c in self.gt.edges[self.edges[i]].vertices if c not in skip)

    def endpoints(self, i: int) -> tuple[Fraction, Fraction]:
        """(from, to) coordinates of l_i: its corner with l_{i-1}, then with l_{i+1}."""
        return self.along(i, self.corners[i]), self.along(i, self.corners[(i + 1) % self.e])

    def to_json(self) -> dict[str, object]:
        from ..exact import format_rational as f
        return {"edges": list(self.edges),
                "labels": [self.gt.edges[i].label() for i in self.edges],
                "corners": [[f(x), f(y)] for x, y in self.corners]}


def satisfies_key_pattern(gt: GeneralizedTComponent, edges: Sequence[int]) -> bool:
    """Even length >= 4; consecutive edges intersect, all others are disjoint."""
    e = len(edges)
    if e < 4 or e % 2 or len(set(edges)) != e:
        return False
    for i in range(e):
        for j in range(i + 1, e):
            adjacent = (j - i) in (1, e - 1)
            if gt.intersects(edges[i], edges[j]) != adjacent:
                return False
    return True


def _shortest_cycles(adj: dict[int, set[int]], through: int | None) -> list[tuple[int, ...]]:
    nodes = sorted(adj)
    for length in range(4, len(nodes) + 1, 2):
        found: list[tuple[int, ...]] = []
        starts = [through] if through is not None else nodes
        for s in starts:
            # with no forced edge, only cycles whose smallest edge is s are generated
            floor = s if through is None else None
            stack = [(s, (s,))]
            while stack:
                v, path = stack.pop()
                if len(path) == length:
                    if s in adj[v]:
                        found.append(path)
                    continue
                for w in adj[v]:
                    if w in path or (floor is not None and w < floor):
                        continue
                    stack.append((w, path + (w,)))
        if found:
            return found
    return []


def _canonical(cycle: tuple[int, ...], anchor: int | None) -> tuple[int, ...]:
    e = len(cycle)
    best = None
    for seq in (cycle, tuple(reversed(cycle))):
        for r in range(e):
            rot = seq[r:] + seq[:r]
            if anchor is not None and rot[0] != anchor:
                continue
            if best is None or rot < best:
                best = rot
    return best


def minimal_key_cycle(g: MultiVertexGraph, through: int | None = None) -> KeyCycle | None:
    """A cycle with the fewest edges, smallest edge-index sequence among ties.

    A shortest cycle of the edge adjacency graph has no chords, so its edges
    satisfy the key pattern. ``through`` forces a given edge into the cycle
    and starts the cycle there.
    """
    if not g.nodes:
        return None
    adj = g.edge_graph()
    if through is not None and through not in adj:
        raise ValueError(f"edge {through} is not in the graph")
    cycles = _shortest_cycles(adj, through)
    if not cycles:
        return None
    best = min(_canonical(c, through) for c in cycles)
    if not satisfies_key_pattern(g.gt, best):
        raise ConsistencyError(f"shortest cycle {best} violates the key pattern")
    e = len(best)
    corners = tuple(g.gt.meeting_point(best[i - 1], best[i]) for i in range(e))
    return KeyCycle(g.gt, best, corners)


def _require_closed_form(kc: KeyCycle, d: int) -> None:
    if kc.e < 4 or kc.e % 2:
        raise NotApplicableError("a key cycle has an even number e >= 4 of edges")
    bad = [kc.edges[i] for i in range(kc.e) if kc.gt.edges[kc.edges[i]].n != d + 2]
    if bad:
        raise NotApplicableError(f"cycle edges {bad} do not have exactly d+2 = {d + 2} vertices")


def edge_factors(kc: KeyCycle, d: int) -> list[Fraction]:
    """Lagrange factor of each cycle edge, carrying its first corner to its second."""
    _require_closed_form(kc, d)
    out = []
    for i in range(kc.e):
        a, b = kc.endpoints(i)
        out.append(lagrange_ratio(kc.others(i), a, b))
    return out


def key_cycle_det(kc: KeyCycle, d: int) -> Fraction:
    """|1 - prod f_i| over the cycle's edge factors."""
    prod = Fraction(1)
    for f in edge_factors(kc, d):
        prod *= f
    return abs(1 - prod)


def _layout(kc: KeyCycle) -> tuple[list[Point], dict[Point, int]]:
    # free vertices edge by edge, then the corners
    cols: list[Point] = []
    for i in range(kc.e):
        e = kc.gt.edges[kc.edges[i]]
        cols.extend(e.point(c) for c in kc.others(i))
    cols.extend(kc.corners)
    return cols, {p: j for j, p in enumerate(cols)}


def assemble_key_matrix(kc: KeyCycle, d: int) -> ExactMatrix:
    """The e(d+1) square conformality matrix of the cycle edges alone."""
    _require_closed_form(kc, d)
    cols, index = _layout(kc)
    rows = []
    for i in range(kc.e):
        e = kc.gt.edges[kc.edges[i]]
        v = vandermonde(e.vertices, d)
        for p in range(d + 1):
            row = [0] * len(cols)
            for k, c in enumerate(e.vertices):
                row[index[e.point(c)]] = v[p, k]
            rows.append(row)
    return ExactMatrix(rows, ncols=len(cols))


def reduced_corner_matrix(kc: KeyCycle, d: int) -> ExactMatrix:
    """e x e system on the corners left after eliminating every free vertex.

    Each edge block of the assembled key matrix is brought to reduced row
    echelon form with its columns ordered (free..., first corner, second
    corner); the last row then involves only the two corners.
    """
    m = assemble_key_matrix(kc, d)
    cols, index = _layout(kc)
    n_free = len(cols) - kc.e
    out = []
    for i in range(kc.e):
        e = kc.gt.edges[kc.edges[i]]
        a, b = kc.endpoints(i)
        order = [index[e.point(c)] for c in kc.others(i)] + [index[e.point(a)], index[e.point(b)]]
        block = m.submatrix(range(i * (d + 1), (i + 1) * (d + 1)), order)
        r, piv = rref(block)
        if piv != list(range(d + 1)):
            raise ConsistencyError("edge block lost full rank on its free vertices and first corner")
        last = r.rows[d]
        row = [Fraction(0)] * kc.e
        row[index[e.point(a)] - n_free] = last[d]
        row[index[e.point(b)] - n_free] = last[d + 1]
        out.append(row)
    return ExactMatrix(out, ncols=kc.e)
