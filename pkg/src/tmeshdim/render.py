"""Deterministic SVG drawings of T-meshes."""

from __future__ import annotations

from fractions import Fraction

from .mesh.components import integral_component
from .mesh.model import TMesh

T_EDGE_COLOR = "#d62728"
MONO_COLOR = "#d62728"
MULTI_COLOR = "#1f5fbf"


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_svg(mesh: TMesh, width: int = 480, margin: int = 20) -> str:
    """Solid black l-edges, highlighted t-edges, dashed edges associated with
    the T-component, red circles for mono-vertices and blue squares for
    multi-vertices."""
    w = mesh.x1 - mesh.x0
    h = mesh.y1 - mesh.y0
    scale = Fraction(width) / w
    height = int(h * scale)

    def px(x: Fraction, y: Fraction) -> tuple[str, str]:
        return (_num(float((x - mesh.x0) * scale) + margin),
                _num(float((mesh.y1 - y) * scale) + margin))

    assoc = {(e.orient, e.line, e.start) for e in integral_component(mesh).associated}
    lines = []
    for e in mesh.l_edges:
        a, b = px(*e.segment.point(e.start)), px(*e.segment.point(e.end))
        if e.kind == "t-edge":
            style = f'stroke="{T_EDGE_COLOR}" stroke-width="2.5"'
        elif (e.orient, e.line, e.start) in assoc:
            style = 'stroke="black" stroke-width="1.5" stroke-dasharray="6,4"'
        else:
            style = 'stroke="black" stroke-width="1.5"'
        lines.append(f'  <line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" {style} '
                     f'data-kind="{e.kind}"/>')
    marks = []
    for v in mesh.vertices():
        x, y = px(*v.position)
        if v.role == "mono":
            marks.append(f'  <circle cx="{x}" cy="{y}" r="4" fill="{MONO_COLOR}"/>')
        elif v.role == "multi":
            sx, sy = _num(float(x) - 4), _num(float(y) - 4)
            marks.append(f'  <rect x="{sx}" y="{sy}" width="8" height="8" fill="{MULTI_COLOR}"/>')
    return "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * margin}" '
        f'height="{height + 2 * margin}">',
        '  <rect width="100%" height="100%" fill="white"/>',
        *lines,
        *marks,
        "</svg>",
        "",
    ])
