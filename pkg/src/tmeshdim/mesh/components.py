"""T-connected components, their integral closure and the free-standing GT form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, Mapping, Sequence

from ..exact import InvalidGeometryError, format_rational, to_rational
from .model import LEdge, MeshFormatError, Point, TMesh


def extract_l_edges(mesh: TMesh) -> list[LEdge]:
    return list(mesh.l_edges)


def mesh_stats(mesh: TMesh) -> dict[str, int]:
    return {
        "c": len(mesh.edges_of_kind("cross-cut")),
        "t": len(mesh.t_edges),
        "n_v": len(mesh.interior_vertices),
        "rays": len(mesh.edges_of_kind("ray")),
    }


def _blocks(n: int, linked: Callable[[int, int], bool]) -> list[list[int]]:
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if linked(i, j):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


@dataclass(frozen=True)
class TComponent:
    edges: tuple[LEdge, ...]
    blocks: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class IntegralTComponent:
    t_edges: tuple[LEdge, ...]
    associated: tuple[LEdge, ...]


def t_component(mesh: TMesh) -> TComponent:
    edges = mesh.t_edges
    pts = [set(e.points()) for e in edges]
    blocks = _blocks(len(edges), lambda i, j: bool(pts[i] & pts[j]))
    return TComponent(edges, tuple(tuple(b) for b in blocks))


def integral_component(mesh: TMesh) -> IntegralTComponent:
    tpts = {p for e in mesh.t_edges for p in e.points()}
    assoc = tuple(e for e in mesh.l_edges
                  if e.kind in ("cross-cut", "ray") and tpts.intersection(e.points()))
    return IntegralTComponent(mesh.t_edges, assoc)


@dataclass(frozen=True)
class GTEdge:
    """An edge of a generalized component; ``vertices`` run along the edge."""

    orient: str
    line: Fraction
    vertices: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def start(self) -> Fraction:
        return self.vertices[0]

    @property
    def end(self) -> Fraction:
        return self.vertices[-1]

    def point(self, coord: Fraction) -> Point:
        return (coord, self.line) if self.orient == "h" else (self.line, coord)

    def points(self) -> list[Point]:
        return [self.point(c) for c in self.vertices]

    def label(self) -> str:
        axis = "y" if self.orient == "h" else "x"
        return f"{axis}={self.line}[{self.start},{self.end}]"


def _spans_cross(a: GTEdge, b: GTEdge) -> bool:
    return (a.orient != b.orient and a.start <= b.line <= a.end and b.start <= a.line <= b.end)


class GeneralizedTComponent:
    """A free-standing arrangement of axis-aligned edges with explicit vertices.

    Construction validates the arrangement: strictly increasing vertex
    coordinates, no overlapping collinear edges, and every crossing of two
    edge spans listed as a vertex of both.
    """

    def __init__(self, edges: Iterable[GTEdge]):
        self.edges: tuple[GTEdge, ...] = tuple(edges)
        self._check()

    @classmethod
    def from_tuples(cls, spec: Iterable[tuple[str, Any, Sequence[Any]]]) -> "GeneralizedTComponent":
        return cls(GTEdge(o, to_rational(l), tuple(to_rational(v) for v in vs)) for o, l, vs in spec)

    def _check(self) -> None:
        for i, e in enumerate(self.edges):
            if e.orient not in ("h", "v"):
                raise InvalidGeometryError(f"edge {i}: orient must be 'h' or 'v'")
            if len(e.vertices) < 2:
                raise InvalidGeometryError(f"edge {i}: needs at least two vertices")
            if any(a >= b for a, b in zip(e.vertices, e.vertices[1:])):
                raise InvalidGeometryError(f"edge {i}: vertex coordinates must strictly increase")
        for i, a in enumerate(self.edges):
            for j in range(i + 1, len(self.edges)):
                b = self.edges[j]
                if a.orient == b.orient:
                    if a.line == b.line and a.start <= b.end and b.start <= a.end:
                        raise InvalidGeometryError(f"edges {i} and {j} overlap on line {a.line}")
                elif _spans_cross(a, b):
                    if b.line not in a.vertices or a.line not in b.vertices:
                        raise InvalidGeometryError(
                            f"edges {i} and {j} cross at an undeclared vertex")

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GeneralizedTComponent) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"GeneralizedTComponent({', '.join(e.label() for e in self.edges)})"

    # -- incidence ----------------------------------------------------------

    @cached_property
    def incidence(self) -> dict[Point, tuple[int, ...]]:
        """Point -> indices of the edges through it."""
        out: dict[Point, list[int]] = {}
        for i, e in enumerate(self.edges):
            for p in e.points():
                out.setdefault(p, []).append(i)
        return {p: tuple(v) for p, v in out.items()}

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(sorted(self.incidence))

    def intersects(self, i: int, j: int) -> bool:
        return i != j and _spans_cross(self.edges[i], self.edges[j])

    def meeting_point(self, i: int, j: int) -> Point | None:
        if not self.intersects(i, j):
            return None
        a, b = self.edges[i], self.edges[j]
        return a.point(b.line)

    def multi_vertices(self, subset: Iterable[int] | None = None) -> set[Point]:
        """Points shared by two edges of ``subset`` (default: all edges)."""
        keep = set(range(len(self.edges))) if subset is None else set(subset)
        return {p for p, es in self.incidence.items() if sum(1 for e in es if e in keep) >= 2}

    def mono_count(self, i: int, subset: Iterable[int] | None = None) -> int:
        """m(l): vertices of edge ``i`` not shared with another edge of ``subset``."""
        keep = set(range(len(self.edges))) if subset is None else set(subset)
        return sum(1 for p in self.edges[i].points()
                   if not any(e != i and e in keep for e in self.incidence[p]))

    def blocks(self) -> list[list[int]]:
        return _blocks(len(self.edges), self.intersects)

    # -- derived components -----------------------------------------------

    def subset(self, indices: Iterable[int]) -> "GeneralizedTComponent":
        return GeneralizedTComponent(self.edges[i] for i in indices)

    def with_vertex(self, edge: int, index: int, coord: Any) -> "GeneralizedTComponent":
        """Copy with one vertex coordinate of ``edge`` replaced (re-sorted, re-validated)."""
        e = self.edges[edge]
        vs = list(e.vertices)
        vs[index] = to_rational(coord)
        if len(set(vs)) != len(vs):
            raise InvalidGeometryError("moved vertex coincides with another vertex of the edge")
        new = GTEdge(e.orient, e.line, tuple(sorted(vs)))
        return GeneralizedTComponent(self.edges[:edge] + (new,) + self.edges[edge + 1:])

    def remapped(self, fx: Callable[[Fraction], Fraction],
                 fy: Callable[[Fraction], Fraction]) -> "GeneralizedTComponent":
        """Image under independent increasing maps of the x and y axes."""
        out = []
        for e in self.edges:
            along, across = (fx, fy) if e.orient == "h" else (fy, fx)
            out.append(GTEdge(e.orient, across(e.line), tuple(along(c) for c in e.vertices)))
        return GeneralizedTComponent(out)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {"edges": [{"orient": e.orient, "line": format_rational(e.line),
                           "vertices": [format_rational(v) for v in e.vertices]} for e in self.edges]}

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "GeneralizedTComponent":
        if not isinstance(doc, Mapping) or not isinstance(doc.get("edges"), list):
            raise MeshFormatError("GT document needs an 'edges' list")
        edges = []
        for i, raw in enumerate(doc["edges"]):
            try:
                orient = raw["orient"]
                line = raw["line"]
                verts = raw["vertices"]
                if isinstance(line, float) or any(isinstance(v, float) for v in verts):
                    raise TypeError("floats are not allowed, use an integer or 'p/q'")
                edges.append(GTEdge(orient, to_rational(line), tuple(to_rational(v) for v in verts)))
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise MeshFormatError(f"edges[{i}]: {exc}") from None
        return cls(edges)


def to_generalized(tc: TComponent) -> GeneralizedTComponent:
    return GeneralizedTComponent(GTEdge(e.orient, e.line, e.vertices) for e in tc.edges)
