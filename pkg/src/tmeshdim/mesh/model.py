"""T-mesh data model over an axis-aligned rectangular domain."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Literal, Mapping

from ..exact import format_rational, to_rational

Orient = Literal["h", "v"]
EdgeKind = Literal["cross-cut", "ray", "t-edge", "boundary"]
Point = tuple[Fraction, Fraction]


class MeshFormatError(ValueError):
    """The mesh document does not match the expected schema."""


class InvalidMeshError(ValueError):
    """The mesh violates a T-mesh axiom."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, order=True)
class Segment:
    """An axis-aligned segment: ``line`` is y for horizontal, x for vertical."""

    orient: Orient
    line: Fraction
    start: Fraction
    end: Fraction

    def contains(self, coord: Fraction) -> bool:
        return self.start <= coord <= self.end

    def point(self, along: Fraction) -> Point:
        return (along, self.line) if self.orient == "h" else (self.line, along)

    def crosses(self, other: "Segment") -> bool:
        if self.orient == other.orient:
            return False
        return self.contains(other.line) and other.contains(self.line)


@dataclass(frozen=True)
class LEdge:
    """A maximal straight segment of the mesh with its vertices in order."""

    orient: Orient
    line: Fraction
    start: Fraction
    end: Fraction
    kind: EdgeKind
    vertices: tuple[Fraction, ...]

    @property
    def segment(self) -> Segment:
        return Segment(self.orient, self.line, self.start, self.end)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def points(self) -> list[Point]:
        seg = self.segment
        return [seg.point(c) for c in self.vertices]

    def label(self) -> str:
        axis = "y" if self.orient == "h" else "x"
        return f"{axis}={self.line}[{self.start},{self.end}]"


@dataclass(frozen=True)
class Vertex:
    position: Point
    interior: bool
    # "mono" / "multi" for vertices on t-edges, otherwise "none"
    role: str


@dataclass
class ValidationIssue:
    kind: str
    detail: str

    def to_json(self) -> dict[str, str]:
        return {"kind": self.kind, "detail": self.detail}


@dataclass
class ValidationReport:
    issues: list[ValidationIssue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind: str, detail: str) -> None:
        self.issues.append(ValidationIssue(kind, detail))

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.ok, "issues": [i.to_json() for i in self.issues]}


def _merge_collinear(segs: list[Segment]) -> list[Segment]:
    """Merge touching collinear segments; overlapping ones are an error."""
    segs = sorted(segs)
    out: list[Segment] = []
    for s in segs:
        if out and out[-1].orient == s.orient and out[-1].line == s.line:
            last = out[-1]
            if s.start < last.end:
                raise InvalidMeshError(f"overlapping parallel segments on line {s.line}: "
                                       f"[{last.start},{last.end}] and [{s.start},{s.end}]")
            if s.start == last.end:
                out[-1] = Segment(s.orient, s.line, last.start, s.end)
                continue
        out.append(s)
    return out


@dataclass(frozen=True)
class TMesh:
    """Interior segments of a T-mesh over ``[x0,x1] x [y0,y1]``.

    The four sides of the domain are implicit. Segments are stored
    normalized: sorted and with touching collinear pieces merged, so every
    stored segment is a maximal interior l-edge.
    """

    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction
    hsegs: tuple[Segment, ...]
    vsegs: tuple[Segment, ...]

    @classmethod
    def build(cls, domain: tuple[Any, Any, Any, Any],
              hsegments: Iterable[tuple[Any, Any, Any]],
              vsegments: Iterable[tuple[Any, Any, Any]]) -> "TMesh":
        """Normalize raw ``(line, start, end)`` triples into a mesh."""
        x0, y0, x1, y1 = (to_rational(v) for v in domain)
        if not (x0 < x1 and y0 < y1):
            raise InvalidMeshError("domain must satisfy x0 < x1 and y0 < y1")
        hs = [Segment("h", *(to_rational(v) for v in t)) for t in hsegments]
        vs = [Segment("v", *(to_rational(v) for v in t)) for t in vsegments]
        for s in hs + vs:
            lo, hi = (x0, x1) if s.orient == "h" else (y0, y1)
            llo, lhi = (y0, y1) if s.orient == "h" else (x0, x1)
            if not s.start < s.end:
                raise InvalidMeshError(f"degenerate segment {s}")
            if s.start < lo or s.end > hi or not (llo <= s.line <= lhi):
                raise InvalidMeshError(f"segment outside domain: {s}")
            if s.line in (llo, lhi):
                raise InvalidMeshError(f"segment lies on the domain boundary: {s}")
        return cls(x0, y0, x1, y1, tuple(_merge_collinear(hs)), tuple(_merge_collinear(vs)))

    # -- raw geometry ---------------------------------------------------

    @property
    def domain(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x0, self.y0, self.x1, self.y1)

    @cached_property
    def boundary_segments(self) -> tuple[Segment, ...]:
        return (
            Segment("h", self.y0, self.x0, self.x1),
            Segment("h", self.y1, self.x0, self.x1),
            Segment("v", self.x0, self.y0, self.y1),
            Segment("v", self.x1, self.y0, self.y1),
        )

    @cached_property
    def all_h(self) -> tuple[Segment, ...]:
        return self.hsegs + self.boundary_segments[:2]

    @cached_property
    def all_v(self) -> tuple[Segment, ...]:
        return self.vsegs + self.boundary_segments[2:]

    def on_boundary(self, p: Point) -> bool:
        x, y = p
        return x in (self.x0, self.x1) or y in (self.y0, self.y1)

    @cached_property
    def vertex_points(self) -> frozenset[Point]:
        pts = set()
        for h in self.all_h:
            for v in self.all_v:
                if h.crosses(v):
                    pts.add((v.line, h.line))
        return frozenset(pts)

    @cached_property
    def interior_vertices(self) -> tuple[Point, ...]:
        return tuple(sorted(p for p in self.vertex_points if not self.on_boundary(p)))

    def _crossings(self, seg: Segment) -> tuple[Fraction, ...]:
        others = self.all_v if seg.orient == "h" else self.all_h
        return tuple(sorted({o.line for o in others if o.crosses(seg)}))

    # -- l-edges ----------------------------------------------------------

    @cached_property
    def l_edges(self) -> tuple[LEdge, ...]:
        """Interior l-edges (horizontal then vertical), then the four boundaries."""
        out = []
        for seg in self.hsegs + self.vsegs:
            a = seg.point(seg.start)
            b = seg.point(seg.end)
            nb = self.on_boundary(a) + self.on_boundary(b)
            kind: EdgeKind = ("t-edge", "ray", "cross-cut")[nb]
            out.append(LEdge(seg.orient, seg.line, seg.start, seg.end, kind, self._crossings(seg)))
        for seg in self.boundary_segments:
            out.append(LEdge(seg.orient, seg.line, seg.start, seg.end, "boundary", self._crossings(seg)))
        return tuple(out)

    @cached_property
    def t_edges(self) -> tuple[LEdge, ...]:
        return tuple(e for e in self.l_edges if e.kind == "t-edge")

    def edges_of_kind(self, kind: EdgeKind) -> list[LEdge]:
        return [e for e in self.l_edges if e.kind == kind]

    @cached_property
    def multi_vertices(self) -> frozenset[Point]:
        th = [e.segment for e in self.t_edges if e.orient == "h"]
        tv = [e.segment for e in self.t_edges if e.orient == "v"]
        return frozenset((v.line, h.line) for h in th for v in tv if h.crosses(v))

    def vertices(self) -> list[Vertex]:
        on_t = {p for e in self.t_edges for p in e.points()}
        out = []
        for p in sorted(self.vertex_points):
            role = "multi" if p in self.multi_vertices else ("mono" if p in on_t else "none")
            out.append(Vertex(p, not self.on_boundary(p), role))
        return out

    # -- transforms and serialization --------------------------------------

    def transformed(self, how: str) -> "TMesh":
        """Image under ``transpose`` (x<->y), ``rot90`` or ``rot270`` (about the origin)."""
        if how == "identity":
            return self
        if how == "transpose":
            fpt = lambda x, y: (y, x)  # noqa: E731
        elif how == "rot90":
            fpt = lambda x, y: (-y, x)  # noqa: E731
        elif how == "rot270":
            fpt = lambda x, y: (y, -x)  # noqa: E731
        else:
            raise ValueError(f"unknown transform {how!r}")
        (ax, ay), (bx, by) = fpt(self.x0, self.y0), fpt(self.x1, self.y1)
        dom = (min(ax, bx), min(ay, by), max(ax, bx), max(ay, by))
        hs, vs = [], []
        for s in self.hsegs + self.vsegs:
            p, q = fpt(*s.point(s.start)), fpt(*s.point(s.end))
            if p[1] == q[1]:
                hs.append((p[1], min(p[0], q[0]), max(p[0], q[0])))
            else:
                vs.append((p[0], min(p[1], q[1]), max(p[1], q[1])))
        return TMesh.build(dom, hs, vs)

    def scaled(self, sx: Any = 1, sy: Any = 1, tx: Any = 0, ty: Any = 0) -> "TMesh":
        """Image under the positive affine map ``(x,y) -> (sx*x+tx, sy*y+ty)``."""
        sx, sy, tx, ty = (to_rational(v) for v in (sx, sy, tx, ty))
        if sx <= 0 or sy <= 0:
            raise ValueError("scale factors must be positive")
        fx = lambda x: sx * x + tx  # noqa: E731
        fy = lambda y: sy * y + ty  # noqa: E731
        return TMesh.build(
            (fx(self.x0), fy(self.y0), fx(self.x1), fy(self.y1)),
            [(fy(s.line), fx(s.start), fx(s.end)) for s in self.hsegs],
            [(fx(s.line), fy(s.start), fy(s.end)) for s in self.vsegs],
        )

    def to_json(self) -> dict[str, Any]:
        f = format_rational
        return {
            "domain": {"x0": f(self.x0), "y0": f(self.y0), "x1": f(self.x1), "y1": f(self.y1)},
            "hsegments": [{"y": f(s.line), "x0": f(s.start), "x1": f(s.end)} for s in self.hsegs],
            "vsegments": [{"x": f(s.line), "y0": f(s.start), "y1": f(s.end)} for s in self.vsegs],
        }


def _field(obj: Mapping[str, Any], key: str, where: str) -> Fraction:
    if not isinstance(obj, Mapping) or key not in obj:
        raise MeshFormatError(f"{where}: missing field {key!r}")
    val = obj[key]
    if isinstance(val, float):
        raise MeshFormatError(f"{where}.{key}: floats are not allowed, use an integer or 'p/q'")
    try:
        return to_rational(val)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MeshFormatError(f"{where}.{key}: {exc}") from None


def parse_mesh(doc: Mapping[str, Any], validate_mesh: bool = True) -> TMesh:
    """Build a :class:`TMesh` from a JSON document.

    With ``validate_mesh`` (the default) any violated T-mesh axiom raises
    :class:`InvalidMeshError` carrying the full report.
    """
    if not isinstance(doc, Mapping):
        raise MeshFormatError("mesh document must be a JSON object")
    for key in ("domain", "hsegments", "vsegments"):
        if key not in doc:
            raise MeshFormatError(f"missing top-level key {key!r}")
    dom = doc["domain"]
    domain = tuple(_field(dom, k, "domain") for k in ("x0", "y0", "x1", "y1"))
    if not isinstance(doc["hsegments"], list) or not isinstance(doc["vsegments"], list):
        raise MeshFormatError("hsegments and vsegments must be lists")
    hs = [tuple(_field(s, k, f"hsegments[{i}]") for k in ("y", "x0", "x1"))
          for i, s in enumerate(doc["hsegments"])]
    vs = [tuple(_field(s, k, f"vsegments[{i}]") for k in ("x", "y0", "y1"))
          for i, s in enumerate(doc["vsegments"])]
    mesh = TMesh.build(domain, hs, vs)
    if validate_mesh:
        report = validate(mesh)
        if not report.ok:
            raise InvalidMeshError("; ".join(f"{i.kind}: {i.detail}" for i in report.issues), report)
    return mesh


def validate(mesh: TMesh) -> ValidationReport:
    """Check the vertex axiom and that the induced cells are rectangles."""
    report = ValidationReport()
    for seg in mesh.hsegs + mesh.vsegs:
        perp = mesh.all_v if seg.orient == "h" else mesh.all_h
        for end in (seg.start, seg.end):
            if not any(p.contains(seg.line) and p.line == end for p in perp):
                x, y = seg.point(end)
                report.add("dangling-endpoint", f"segment {seg.orient} {seg.line} ends at ({x}, {y}) "
                                                "off any perpendicular segment")
    _check_cells(mesh, report)
    return report


def _check_cells(mesh: TMesh, report: ValidationReport) -> None:
    # elementary grid from every coordinate that appears anywhere
    xs = {mesh.x0, mesh.x1}
    ys = {mesh.y0, mesh.y1}
    for s in mesh.hsegs:
        ys.add(s.line)
        xs.update((s.start, s.end))
    for s in mesh.vsegs:
        xs.add(s.line)
        ys.update((s.start, s.end))
    xs_l, ys_l = sorted(xs), sorted(ys)
    nx, ny = len(xs_l) - 1, len(ys_l) - 1

    def covered(segs: Iterable[Segment], line: Fraction, a: Fraction, b: Fraction) -> bool:
        return any(s.line == line and s.start <= a and b <= s.end for s in segs)

    parent = list(range(nx * ny))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    walls: list[tuple[int, int, str]] = []
    for i in range(nx):
        for j in range(ny):
            k = i * ny + j
            if i + 1 < nx:
                if covered(mesh.vsegs, xs_l[i + 1], ys_l[j], ys_l[j + 1]):
                    walls.append((k, k + ny, f"x={xs_l[i + 1]} y in [{ys_l[j]},{ys_l[j + 1]}]"))
                else:
                    parent[find(k)] = find(k + ny)
            if j + 1 < ny:
                if covered(mesh.hsegs, ys_l[j + 1], xs_l[i], xs_l[i + 1]):
                    walls.append((k, k + 1, f"y={ys_l[j + 1]} x in [{xs_l[i]},{xs_l[i + 1]}]"))
                else:
                    parent[find(k)] = find(k + 1)
    cells: dict[int, list[tuple[int, int]]] = {}
    for i in range(nx):
        for j in range(ny):
            cells.setdefault(find(i * ny + j), []).append((i, j))
    for members in cells.values():
        i_lo = min(i for i, _ in members)
        i_hi = max(i for i, _ in members)
        j_lo = min(j for _, j in members)
        j_hi = max(j for _, j in members)
        if (i_hi - i_lo + 1) * (j_hi - j_lo + 1) != len(members):
            report.add("non-rectangular-cell",
                       f"cell touching [{xs_l[i_lo]},{xs_l[i_hi + 1]}]x[{ys_l[j_lo]},{ys_l[j_hi + 1]}] "
                       "is not a rectangle")
    for a, b, where in walls:
        if find(a) == find(b):
            report.add("edge-inside-cell", f"edge piece {where} has the same cell on both sides")
