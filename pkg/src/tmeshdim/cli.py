"""Command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import fixtures
from .conformality import build_matrix, component_rank, mesh_component, vanishable_warnings
from .exact import InvalidGeometryError, PreconditionError, format_rational, rank, to_rational
from .mesh.components import GeneralizedTComponent, mesh_stats
from .mesh.model import InvalidMeshError, MeshFormatError, TMesh, parse_mesh, validate
from .mesh.random import random_mesh
from .partition import complete_partition, rank_identity_check
from .render import render_svg
from .stability.cycles import minimal_key_cycle, multi_vertex_graph
from .stability.structural import (
    DEFAULT_BUDGET,
    SearchBudgetExceeded,
    structurally_isomorphic,
    structurally_similar,
)
from .stability.witness import FOUND, INCONCLUSIVE, STABLE, sample_similar, witness_search

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUDGET = 4
EXIT_STABLE = 5


class InputError(Exception):
    pass


def _load_document(source: str) -> dict[str, Any]:
    if source.startswith("builtin:"):
        try:
            return fixtures.load_document(source[len("builtin:"):])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeshFormatError(f"{source}: invalid JSON: {exc}") from None


def load_mesh(source: str) -> TMesh:
    doc = _load_document(source)
    if "domain" not in doc:
        raise MeshFormatError(f"{source}: expected a mesh document with a 'domain'")
    return parse_mesh(doc)


def load_component(source: str) -> tuple[GeneralizedTComponent, TMesh | None]:
    """Accept either a GT document or a mesh (whose T-component is used)."""
    doc = _load_document(source)
    if isinstance(doc, dict) and "edges" in doc:
        return GeneralizedTComponent.from_json(doc), None
    mesh = parse_mesh(doc)
    return mesh_component(mesh), mesh


def _labels(gt: GeneralizedTComponent, idx) -> list[str]:
    return [gt.edges[i].label() for i in idx]


def analyze_mesh(mesh: TMesh, d: int) -> dict[str, Any]:
    gt = mesh_component(mesh)
    st = mesh_stats(mesh)
    blocks = []
    for b in gt.blocks():
        sub = gt.subset(b)
        cp = complete_partition(sub, d)
        r = rank(build_matrix(sub, d).matrix)
        entry: dict[str, Any] = {
            "edges": _labels(gt, b),
            "rank": r,
            "cvs_dim": len(sub.vertices) - r,
            "cndc": _labels(sub, cp.cndc),
            "diagonalizable": not cp.cndc,
            "order": _labels(sub, cp.order) if not cp.cndc else None,
            "key_cycle": None,
        }
        if cp.cndc:
            kc = minimal_key_cycle(multi_vertex_graph(sub, cp.cndc))
            entry["key_cycle"] = _labels(sub, kc.edges) if kc else None
        blocks.append(entry)
    total_rank = sum(b["rank"] for b in blocks)
    cp = complete_partition(gt, d)
    s = cp.s
    r1 = component_rank(gt.subset(cp.cndc), d)
    base = (d + 1) ** 2 + st["n_v"]
    dims = {
        "theorem": base + st["c"] * (d + 1) - total_rank,
        "diagonalizable_formula": base + (st["c"] - st["t"]) * (d + 1) if not cp.cndc else None,
        "via_cndc": base + (st["c"] + s - st["t"]) * (d + 1) - r1,
    }
    return {
        "degree": d,
        "stats": st,
        "rank": total_rank,
        "diagonalizable": not cp.cndc,
        "s": s,
        "blocks": blocks,
        "dimension": dims["theorem"],
        "dimensions": dims,
        "warnings": vanishable_warnings(gt, d),
    }


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_validate(args: argparse.Namespace) -> int:
    doc = _load_document(args.mesh)
    mesh = parse_mesh(doc, validate_mesh=False)
    report = validate(mesh)
    text = "valid" if report.ok else "\n".join(f"{i.kind}: {i.detail}" for i in report.issues)
    _emit(args, report.to_json(), text)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_analyze(args: argparse.Namespace) -> int:
    mesh = load_mesh(args.mesh)
    rep = analyze_mesh(mesh, args.d)
    if args.dump_matrix:
        rep["matrix"] = build_matrix(mesh_component(mesh), args.d).to_json()
    st = rep["stats"]
    lines = [
        f"degree {args.d}: c={st['c']} t={st['t']} n_v={st['n_v']} rays={st['rays']}",
        f"conformality rank {rep['rank']}",
        f"dimension {rep['dimension']}",
        f"diagonalizable {str(rep['diagonalizable']).lower()} (s={rep['s']})",
    ]
    lines += [f"warning: {w}" for w in rep["warnings"]]
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK


def cmd_dimension(args: argparse.Namespace) -> int:
    rep = analyze_mesh(load_mesh(args.mesh), args.d)
    _emit(args, {"degree": args.d, "dimension": rep["dimension"], "dimensions": rep["dimensions"]},
          str(rep["dimension"]))
    return EXIT_OK


def cmd_partition(args: argparse.Namespace) -> int:
    gt, _ = load_component(args.mesh)
    cp = complete_partition(gt, args.d)
    check = rank_identity_check(gt, args.d)
    payload = {
        "degree": args.d,
        "t": cp.t,
        "s": cp.s,
        "cndc": _labels(gt, cp.cndc),
        "diagonalizable_order": _labels(gt, cp.order),
        "rank_identity": check,
    }
    if args.dump_matrix:
        payload["matrix"] = build_matrix(gt, args.d).to_json()
    text = (f"t={cp.t} s={cp.s}\ncndc: {', '.join(payload['cndc']) or '(empty)'}\n"
            f"order: {', '.join(payload['diagonalizable_order']) or '(empty)'}\n"
            f"rank identity: {check['lhs']} = {check['rhs']} {'holds' if check['holds'] else 'FAILS'}")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_isomorphic(args: argparse.Namespace) -> int:
    a, b = load_mesh(args.a), load_mesh(args.b)
    em = structurally_isomorphic(a, b)
    if em is None:
        _emit(args, {"isomorphic": False}, "not isomorphic")
        return EXIT_OK
    pairs = [[a.l_edges[i].label(), b.l_edges[j].label()] for i, j in enumerate(em.mapping)]
    _emit(args, {"isomorphic": True, **em.to_json(), "pairs": pairs},
          f"isomorphic ({em.branch})\n" + "\n".join(f"{p} -> {q}" for p, q in pairs))
    return EXIT_OK


def cmd_similar(args: argparse.Namespace) -> int:
    (a, _), (b, _) = load_component(args.a), load_component(args.b)
    try:
        em = structurally_similar(a, b, budget=args.budget)
    except SearchBudgetExceeded as exc:
        _emit(args, {"similar": None, "budget_exceeded": True}, f"budget exceeded ({exc.budget} nodes)")
        return EXIT_BUDGET
    if em is None:
        _emit(args, {"similar": False}, "not similar")
        return EXIT_OK
    pairs = [[a.edges[i].label(), b.edges[j].label()] for i, j in enumerate(em.mapping)]
    _emit(args, {"similar": True, "mapping": list(em.mapping), "pairs": pairs},
          "similar\n" + "\n".join(f"{p} -> {q}" for p, q in pairs))
    return EXIT_OK


def _parse_target(text: str | None) -> tuple[int, Any] | None:
    if text is None:
        return None
    edge, _, coord = text.partition(":")
    return int(edge), to_rational(coord)


def cmd_witness(args: argparse.Namespace) -> int:
    gt, _ = load_component(args.mesh)
    rep = witness_search(gt, args.d, seed=args.seed, budget=args.budget, target=_parse_target(args.target))
    payload = rep.to_json()
    if rep.status == FOUND:
        text = (f"witness-found ({rep.method}): edge {gt.edges[rep.edge].label()} vertex "
                f"{format_rational(rep.original)} -> {format_rational(rep.witness)}, "
                f"rank {rep.rank_before} -> {rep.rank_after}")
    else:
        text = rep.status + "".join(f"\n  {n}" for n in rep.notes)
    _emit(args, payload, text)
    return {FOUND: EXIT_OK, STABLE: EXIT_STABLE, INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.status]


def cmd_sample(args: argparse.Namespace) -> int:
    gt, _ = load_component(args.mesh)
    hist = sample_similar(gt, args.d, args.n, args.seed, move_lines=args.move_lines)
    payload = {str(k): v for k, v in hist.items()}
    _emit(args, payload, json.dumps(payload))
    return EXIT_OK


def cmd_gen_random(args: argparse.Namespace) -> int:
    mesh = random_mesh(args.seed, args.steps, degree_floor=args.d)
    text = json.dumps(mesh.to_json(), indent=2)
    if args.o:
        Path(args.o).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    svg = render_svg(load_mesh(args.mesh))
    if args.o:
        Path(args.o).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmeshdim", description=(
        "Exact dimension and stability analysis of C^(d-1) spline spaces over T-meshes. "
        "Inputs are JSON files or builtin:NAME fixtures."))
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name: str, fn, help: str, inputs: Sequence[str] = ("mesh",), degree: bool = True,
            json_flag: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        for i in inputs:
            sp.add_argument(i)
        if degree:
            sp.add_argument("-d", type=int, default=3, help="polynomial degree (default 3)")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    cmd("validate", cmd_validate, "check the T-mesh axioms", degree=False)
    cmd("analyze", cmd_analyze, "full analysis report").add_argument(
        "--dump-matrix", action="store_true", help="include the conformality matrix")
    cmd("dimension", cmd_dimension, "spline space dimension")
    cmd("partition", cmd_partition, "complete partition and rank identity").add_argument(
        "--dump-matrix", action="store_true", help="include the conformality matrix")
    cmd("isomorphic", cmd_isomorphic, "structural isomorphism of two meshes", ("a", "b"), degree=False)
    sp = cmd("similar", cmd_similar, "structural similarity of two components", ("a", "b"), degree=False)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node limit")
    sp = cmd("witness", cmd_witness, "search for a rank-lowering vertex move")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--budget", type=int, default=200, help="random draws for the fallback")
    sp.add_argument("--target", help="EDGE:COORD, restrict the closed form to one vertex")
    sp = cmd("sample", cmd_sample, "rank histogram over random similar components")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("-n", type=int, default=100, help="number of draws")
    sp.add_argument("--move-lines", action="store_true", help="also relabel line coordinates")
    sp = cmd("gen-random", cmd_gen_random, "random valid T-mesh", inputs=(), degree=False, json_flag=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--steps", type=int, default=3, help="refinement steps")
    sp.add_argument("-d", type=int, default=None, help="degree floor: no t-edge below d+2 vertices")
    sp.add_argument("-o", help="output path")
    sp = cmd("render", cmd_render, "SVG drawing", degree=False, json_flag=False)
    sp.add_argument("-o", help="output path")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is reserved for invalid input here
        return EXIT_ERROR if exc.code == 2 else int(exc.code or 0)
    try:
        return args.func(args)
    except (MeshFormatError, InvalidMeshError, InvalidGeometryError) as exc:
        if getattr(args, "json", False):
            report = getattr(exc, "report", None)
            print(json.dumps(report.to_json() if report else {"valid": False, "error": str(exc)}, indent=2))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
