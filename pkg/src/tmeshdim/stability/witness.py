"""Rank-instability witnesses and random sampling of structurally similar components."""

from __future__ import annotations

import math
import random as _random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..conformality import component_rank
from ..exact import InvalidGeometryError, format_rational, lagrange_ratio, rank
from ..mesh.components import GeneralizedTComponent
from ..partition import complete_partition
from .cycles import (
    KeyCycle,
    NotApplicableError,
    assemble_key_matrix,
    edge_factors,
    minimal_key_cycle,
    multi_vertex_graph,
)

STABLE = "stable-by-diagonalizability"
FOUND = "witness-found"
INCONCLUSIVE = "inconclusive"


@dataclass
class WitnessReport:
    status: str
    method: str | None = None
    edge: int | None = None
    vertex_index: int | None = None
    original: Fraction | None = None
    witness: Fraction | None = None
    rank_before: int | None = None
    rank_after: int | None = None
    key_rank_before: int | None = None
    key_rank_after: int | None = None
    cycle: list[int] = field(default_factory=list)
    K: Fraction | None = None
    notes: list[str] = field(default_factory=list)
    witnessed: GeneralizedTComponent | None = None

    def to_json(self) -> dict[str, Any]:
        f = lambda v: None if v is None else format_rational(v)  # noqa: E731
        return {
            "status": self.status,
            "method": self.method,
            "target": None if self.edge is None else {"edge": self.edge, "vertex_index": self.vertex_index},
            "original": f(self.original),
            "witness": f(self.witness),
            "rank_before": self.rank_before,
            "rank_after": self.rank_after,
            "key_rank_before": self.key_rank_before,
            "key_rank_after": self.key_rank_after,
            "cycle": self.cycle,
            "K": f(self.K),
            "notes": self.notes,
            "witnessed_gt": None if self.witnessed is None else self.witnessed.to_json(),
        }


def _full_rank(gt: GeneralizedTComponent, d: int) -> int:
    return component_rank(gt, d)


def _is_free(gt: GeneralizedTComponent, edge: int, coord: Fraction) -> bool:
    return len(gt.incidence[gt.edges[edge].point(coord)]) == 1


def _closed_form_candidates(gt: GeneralizedTComponent, kc: KeyCycle, d: int,
                            target: tuple[int, Fraction] | None):
    """Yield (edge, coord, K, root) for free vertices on the cycle; root is None when K = 1."""
    factors = edge_factors(kc, d)
    for i in range(kc.e):
        ei = kc.edges[i]
        a, b = kc.endpoints(i)
        for o in kc.others(i):
            if target is not None and (ei, o) != target:
                continue
            if not _is_free(gt, ei, o):
                continue
            K = lagrange_ratio([s for s in kc.others(i) if s != o], a, b)
            for j in range(kc.e):
                if j != i:
                    K *= factors[j]
            # K (b - x)/(a - x) = 1  <=>  x = (K b - a)/(K - 1)
            yield ei, o, K, None if K == 1 else (K * b - a) / (K - 1)


def _key_rank(kc: KeyCycle, d: int, gt: GeneralizedTComponent) -> int | None:
    try:
        return rank(assemble_key_matrix(KeyCycle(gt, kc.edges, kc.corners), d))
    except NotApplicableError:
        return None


def witness_search(gt: GeneralizedTComponent, d: int, seed: int = 0, budget: int = 200,
                   target: tuple[int, Any] | None = None) -> WitnessReport:
    """Look for a single mono-vertex move that lowers the conformality rank.

    A component with empty CNDC is stable and reported as such. Otherwise
    the closed-form root of the minimal key cycle's determinant is tried
    for every free vertex on the cycle (or only ``target``, given as
    ``(edge index, coordinate)``), and among roots that keep the component
    valid and lower the full rank the simplest rational is chosen. When no
    root works, up to ``budget`` seeded random single-vertex moves are tried.
    """
    cp = complete_partition(gt, d)
    if not cp.cndc:
        return WitnessReport(STABLE, rank_before=_full_rank(gt, d))
    before = _full_rank(gt, d)
    kc = minimal_key_cycle(multi_vertex_graph(gt, cp.cndc))
    report = WitnessReport(INCONCLUSIVE, rank_before=before, cycle=list(kc.edges) if kc else [])
    if target is not None:
        target = (target[0], Fraction(target[1]))
    if kc is None:
        report.notes.append("no key cycle found")
    else:
        report.key_rank_before = _key_rank(kc, d, gt)
        try:
            found = []
            for edge, o, K, root in _closed_form_candidates(gt, kc, d, target):
                if root is None:
                    report.notes.append(
                        f"K = 1 at edge {edge} vertex {format_rational(o)}; closed form skipped")
                    continue
                moved = _move(gt, edge, o, root)
                if moved is None:
                    continue
                after = _full_rank(moved, d)
                if after < before:
                    found.append((root.denominator, abs(root), root, edge, o, K, moved, after))
            if found:
                _, _, root, edge, o, K, moved, after = min(found, key=lambda t: t[:2] + (t[3], t[4]))
                _fill(report, "closed-form", gt, edge, o, root, moved, after, kc, d)
                report.K = K
                return report
            report.notes.append("no closed-form root lowers the full rank")
        except NotApplicableError as exc:
            report.notes.append(f"closed form not applicable: {exc}")
    return _sample_fallback(gt, d, report, kc, seed, budget, before)


def _move(gt: GeneralizedTComponent, edge: int, old: Fraction, new: Fraction) -> GeneralizedTComponent | None:
    e = gt.edges[edge]
    if new in e.vertices:
        return None
    try:
        return gt.with_vertex(edge, e.vertices.index(old), new)
    except InvalidGeometryError:
        return None


def _fill(report: WitnessReport, method: str, gt: GeneralizedTComponent, edge: int,
          o: Fraction, new: Fraction, moved: GeneralizedTComponent, after: int,
          kc: KeyCycle | None, d: int) -> None:
    report.status = FOUND
    report.method = method
    report.edge = edge
    report.vertex_index = gt.edges[edge].vertices.index(o)
    report.original = o
    report.witness = new
    report.rank_after = after
    report.witnessed = moved
    if kc is not None and report.key_rank_before is not None:
        report.key_rank_after = _key_rank(kc, d, moved)


def _candidate_values(gt: GeneralizedTComponent, rng: _random.Random, orient: str) -> Fraction:
    coords = sorted({c for e in gt.edges if e.orient == orient for c in e.vertices}
                    | {e.line for e in gt.edges if e.orient != orient})
    if rng.random() < 0.5:
        return rng.choice(coords)
    lo, hi = coords[0] - 1, coords[-1] + 1
    q = rng.randint(1, 6)
    return Fraction(rng.randint(int(lo * q), int(hi * q)), q)


def _sample_fallback(gt: GeneralizedTComponent, d: int, report: WitnessReport, kc: KeyCycle | None,
                     seed: int, budget: int, before: int) -> WitnessReport:
    rng = _random.Random(seed)
    free = [(i, c) for i, e in enumerate(gt.edges) for c in e.vertices if _is_free(gt, i, c)]
    tried = 0
    while tried < budget and free:
        tried += 1
        edge, o = rng.choice(free)
        new = _candidate_values(gt, rng, gt.edges[edge].orient)
        moved = _move(gt, edge, o, new)
        if moved is None:
            continue
        after = _full_rank(moved, d)
        if after < before:
            _fill(report, "sampled", gt, edge, o, new, moved, after, kc, d)
            report.notes.append(f"sampling succeeded after {tried} draws")
            return report
    report.method = "sampled" if budget > 0 else None
    report.notes.append(f"sampling budget of {budget} draws exhausted")
    return report


def _random_rational(rng: _random.Random, lo: Fraction, hi: Fraction, q: int) -> Fraction:
    """Uniform over the multiples of 1/q strictly inside (lo, hi]."""
    a, b = int(lo * q) + 1, int(hi * q)
    if a > b:
        return (lo + hi) / 2
    return Fraction(rng.randint(a, b), q)


def _order_preserving(values: list[Fraction], rng: _random.Random, max_den: int) -> dict[Fraction, Fraction]:
    lo, hi = values[0] - 1, values[-1] + 1
    pool: set[Fraction] = set()
    # lattice fine enough to hold twice the needed points
    q = max(rng.randint(1, max_den), math.ceil(2 * len(values) / (hi - lo)))
    while len(pool) < len(values):
        pool.add(_random_rational(rng, lo, hi, q))
    return dict(zip(values, sorted(pool)))


def similar_draw(gt: GeneralizedTComponent, rng: _random.Random, move_lines: bool = False,
                 max_den: int = 3, tries: int = 1000) -> GeneralizedTComponent:
    """One random member of the structurally similar class of ``gt``.

    Free (mono) vertices get fresh distinct rationals, all on one lattice
    1/q with q <= ``max_den`` drawn per sample (refined by halving on edges
    too short to hold their vertices); multi-vertices stay put. With
    ``move_lines`` both axes are first relabelled by a random increasing
    map. Draws that change vertex counts or crossings are rejected.
    """
    base = gt
    if move_lines and len(gt):
        xs = sorted({c for e in gt.edges for c in (e.vertices if e.orient == "h" else (e.line,))})
        ys = sorted({c for e in gt.edges for c in (e.vertices if e.orient == "v" else (e.line,))})
        mx, my = _order_preserving(xs, rng, max_den), _order_preserving(ys, rng, max_den)
        base = gt.remapped(mx.__getitem__, my.__getitem__)
    fixed_on = [[c for c in e.vertices if not _is_free(base, i, c)] for i, e in enumerate(base.edges)]
    for _ in range(tries):
        q = rng.randint(1, max_den)
        edges = []
        for e, fixed in zip(base.edges, fixed_on):
            k = e.n - len(fixed)
            lo, hi = e.start - 1, e.end + 1
            qe = q
            # refine this edge's lattice until it has room for all its vertices
            while math.floor(hi * qe) - math.floor(lo * qe) < e.n:
                qe *= 2
            picks: set[Fraction] = set()
            guard = 0
            while len(picks) < k and guard < 200:
                guard += 1
                c = _random_rational(rng, lo, hi, qe)
                if c not in fixed:
                    picks.add(c)
            edges.append(type(e)(e.orient, e.line, tuple(sorted(fixed + sorted(picks)))))
        try:
            cand = GeneralizedTComponent(edges)
        except InvalidGeometryError:
            continue
        if any(a.n != b.n for a, b in zip(cand.edges, base.edges)):
            continue
        if all(cand.intersects(i, j) == base.intersects(i, j)
               for i in range(len(base)) for j in range(i + 1, len(base))):
            return cand
    raise RuntimeError("could not draw a structurally similar component")


def sample_similar(gt: GeneralizedTComponent, d: int, n: int, seed: int,
                   move_lines: bool = False) -> dict[int, int]:
    """Histogram {rank: count} of conformality ranks over ``n`` random similar components."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _random.Random(seed)
    counts: Counter[int] = Counter()
    for _ in range(n):
        counts[_full_rank(similar_draw(gt, rng, move_lines), d)] += 1
    return dict(sorted(counts.items()))
