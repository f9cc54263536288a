"""Seeded random T-meshes built by inserting segments between existing lines."""

from __future__ import annotations

import random as _random
from fractions import Fraction

from .model import InvalidMeshError, TMesh


def _crossings(mesh: TMesh, orient: str, line: Fraction) -> list[Fraction]:
    perp = mesh.all_v if orient == "h" else mesh.all_h
    return sorted({p.line for p in perp if p.contains(line)})


def random_mesh(seed: int, refine_steps: int = 3, degree_floor: int | None = None,
                size: int = 6, attempts: int = 25) -> TMesh:
    """A valid T-mesh from a coarse grid plus ``refine_steps`` refinements.

    A refinement either inserts one segment or a small block of crossing
    segments. A single insertion picks a line coordinate (often reusing one
    already in the mesh so that segments line up) and connects two crossings
    of perpendicular segments along it, so the vertex axiom holds by
    construction. A block picks two parallel segments facing each other,
    spans 2-4 segments between them and then 2-3 perpendicular segments
    running from the first of those to the last, which tends to produce
    cycles of t-edges. With ``degree_floor`` d, a refinement that would leave
    a t-edge with fewer than d+2 vertices is discarded and redrawn.
    """
    rng = _random.Random(seed)
    w = h = size
    nx = rng.randint(1, 3)
    ny = rng.randint(1, 3)
    xs = sorted(rng.sample(range(1, w), nx))
    ys = sorted(rng.sample(range(1, h), ny))
    mesh = TMesh.build((0, 0, w, h), [(y, 0, w) for y in ys], [(x, 0, h) for x in xs])
    half = [Fraction(k, 2) for k in range(1, 2 * size)]
    for _ in range(refine_steps):
        for _ in range(attempts):
            if rng.random() < 0.5:
                cand = _try_insert(mesh, rng, half)
            else:
                cand = _try_block(mesh, rng)
            if cand is None:
                continue
            if degree_floor is not None and any(e.n < degree_floor + 2 for e in cand.t_edges):
                continue
            mesh = cand
            break
    return mesh


def _try_insert(mesh: TMesh, rng: _random.Random, pool: list[Fraction]) -> TMesh | None:
    orient = rng.choice("hv")
    own = mesh.hsegs if orient == "h" else mesh.vsegs
    existing = sorted({s.line for s in own} | {s.start for s in (mesh.vsegs if orient == "h" else mesh.hsegs)}
                      | {s.end for s in (mesh.vsegs if orient == "h" else mesh.hsegs)})
    lo, hi = (mesh.y0, mesh.y1) if orient == "h" else (mesh.x0, mesh.x1)
    existing = [c for c in existing if lo < c < hi]
    if existing and rng.random() < 0.6:
        line = rng.choice(existing)
    else:
        line = rng.choice([c for c in pool if lo < c < hi])
    stops = _crossings(mesh, orient, line)
    if len(stops) < 2:
        return None
    i = rng.randrange(len(stops) - 1)
    j = rng.randrange(i + 1, min(len(stops), i + 5))
    a, b = stops[i], stops[j]
    if any(s.line == line and s.start < b and a < s.end for s in own):
        return None
    hs = [(s.line, s.start, s.end) for s in mesh.hsegs]
    vs = [(s.line, s.start, s.end) for s in mesh.vsegs]
    (hs if orient == "h" else vs).append((line, a, b))
    try:
        return TMesh.build(mesh.domain, hs, vs)
    except InvalidMeshError:
        return None


def _try_block(mesh: TMesh, rng: _random.Random) -> TMesh | None:
    orient = rng.choice("hv")
    # rails are perpendicular to the rungs we insert first
    rails = mesh.all_v if orient == "h" else mesh.all_h
    r1, r2 = rng.sample(rails, 2)
    if r1.line > r2.line:
        r1, r2 = r2, r1
    lo, hi = max(r1.start, r2.start), min(r1.end, r2.end)
    if hi - lo <= 0 or r1.line == r2.line:
        return None
    p = rng.randint(2, 4)
    q = rng.randint(2, 3)
    den = rng.choice((4, 6, 8))
    rungs = sorted(rng.sample(_grid(lo, hi, den), p)) if len(_grid(lo, hi, den)) >= p else None
    cols = _grid(r1.line, r2.line, den)
    if rungs is None or len(cols) < q:
        return None
    cross = sorted(rng.sample(cols, q))
    hs = [(s.line, s.start, s.end) for s in mesh.hsegs]
    vs = [(s.line, s.start, s.end) for s in mesh.vsegs]
    first = [(y, r1.line, r2.line) for y in rungs]
    second = [(x, rungs[0], rungs[-1]) for x in cross]
    if orient == "h":
        hs += first
        vs += second
    else:
        vs += first
        hs += second
    try:
        return TMesh.build(mesh.domain, hs, vs)
    except InvalidMeshError:
        return None


def _grid(lo: Fraction, hi: Fraction, den: int) -> list[Fraction]:
    out = []
    k = int(lo * den) + 1
    while Fraction(k, den) < hi:
        out.append(Fraction(k, den))
        k += 1
    return out
