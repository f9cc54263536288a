import json
import subprocess
import sys

import pytest

from tmeshdim.cli import main
from tmeshdim.fixtures import load_document, load_mesh
from tmeshdim.mesh import parse_mesh, validate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def grid_file(tmp_path, m, n):
    doc = {"domain": {"x0": 0, "y0": 0, "x1": m + 1, "y1": n + 1},
           "hsegments": [{"y": y, "x0": 0, "x1": m + 1} for y in range(1, n + 1)],
           "vsegments": [{"x": x, "y0": 0, "y1": n + 1} for x in range(1, m + 1)]}
    p = tmp_path / f"grid{m}x{n}.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_analyze_mesh_k(capsys):
    code, rep = run_json(capsys, "analyze", "builtin:mesh-k", "-d", "3")
    assert code == 0
    assert rep["rank"] == 16 and rep["dimension"] == 56 and rep["diagonalizable"] is False
    assert rep["dimensions"]["via_cndc"] == 56 and rep["dimensions"]["diagonalizable_formula"] is None
    assert rep["blocks"][0]["key_cycle"] is not None


def test_analyze_three_edge_and_grid(capsys, tmp_path):
    code, rep = run_json(capsys, "analyze", "builtin:three-edge", "-d", "2")
    dims = rep["dimensions"]
    assert rep["diagonalizable"] and dims["theorem"] == dims["diagonalizable_formula"] == dims["via_cndc"]
    assert rep["warnings"]
    code, out, _ = run(capsys, "dimension", grid_file(tmp_path, 2, 2), "-d", "2")
    assert code == 0 and out.strip() == "25"


def test_dump_matrix(capsys):
    code, rep = run_json(capsys, "analyze", "builtin:three-edge-gt", "-d", "2")
    assert code == 2
    code, rep = run_json(capsys, "partition", "builtin:three-edge-gt", "-d", "2", "--dump-matrix")
    assert code == 0 and rep["matrix"]["shape"] == [9, 9]
    assert rep["rank_identity"]["holds"] and rep["cndc"] == []


def test_validation_failure_exit_code(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"domain": {"x0": 0, "y0": 0, "x1": 3, "y1": 3},
                             "hsegments": [{"y": 1, "x0": 0, "x1": 2}], "vsegments": []}))
    code, rep = run_json(capsys, "validate", str(p))
    assert code == 2 and rep["issues"][0]["kind"] == "dangling-endpoint"
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 2 and "error" in err
    p.write_text("{not json")
    assert run(capsys, "analyze", str(p))[0] == 2
    assert run(capsys, "validate", "builtin:mesh-g")[0] == 0


def test_io_and_usage_errors(capsys, tmp_path):
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "analyze", "builtin:nope")[0] == 1
    assert run(capsys, "witness", "builtin:mesh-k")[0] == 1  # --seed is mandatory
    assert run(capsys, "analyze", "builtin:mesh-k", "-d", "0")[0] == 1


def test_witness_exit_codes(capsys):
    code, rep = run_json(capsys, "witness", "builtin:mesh-k", "-d", "3", "--seed", "0")
    assert code == 0 and rep["status"] == "witness-found" and rep["method"] == "closed-form"
    assert rep["witness"] == 2 and rep["rank_after"] == 15
    code, rep = run_json(capsys, "witness", "builtin:three-edge", "-d", "2", "--seed", "0")
    assert code == 5 and rep["status"] == "stable-by-diagonalizability"


def test_witness_inconclusive(capsys, tmp_path):
    p = tmp_path / "k1.json"
    p.write_text(json.dumps({"edges": [
        {"orient": "h", "line": 0, "vertices": [0, 2, 3]},
        {"orient": "v", "line": 2, "vertices": [0, 2, 5]},
        {"orient": "h", "line": 2, "vertices": [0, 2, "5/2"]},
        {"orient": "v", "line": 0, "vertices": [0, 1, 2]}]}))
    code, rep = run_json(capsys, "witness", str(p), "-d", "1", "--seed", "0", "--budget", "0",
                         "--target", "3:1")
    assert code == 3 and rep["status"] == "inconclusive"


def test_similar_and_budget(capsys):
    code, rep = run_json(capsys, "similar", "builtin:ssi-t1", "builtin:ssi-t2")
    assert code == 0 and rep["similar"] is True
    code, rep = run_json(capsys, "similar", "builtin:mesh-g", "builtin:mesh-g", "--budget", "1")
    assert code == 4 and rep["budget_exceeded"]
    code, rep = run_json(capsys, "similar", "builtin:mesh-k", "builtin:mesh-g")
    assert code == 0 and rep["similar"] is False


def test_isomorphic(capsys, tmp_path):
    code, rep = run_json(capsys, "isomorphic", "builtin:mesh-k", "builtin:mesh-k")
    assert rep["isomorphic"] and rep["branch"] == "direct"
    assert rep["mapping"] == list(range(len(rep["mapping"])))
    code, rep = run_json(capsys, "isomorphic", "builtin:grid-2x2", "builtin:mesh-k")
    assert code == 0 and rep == {"isomorphic": False}
    rotated = tmp_path / "rot.json"
    rotated.write_text(json.dumps(load_mesh("mesh-g").transformed("rot90").to_json()))
    code, rep = run_json(capsys, "isomorphic", "builtin:mesh-g", str(rotated))
    assert rep["isomorphic"] and rep["branch"].startswith("axis-swap")
    code, out, _ = run(capsys, "isomorphic", "builtin:mesh-k", "builtin:grid-2x2")
    assert out.strip() == "not isomorphic"


def test_json_is_byte_deterministic(capsys):
    for argv in (["analyze", "builtin:mesh-g", "-d", "2"],
                 ["sample", "builtin:mesh-k", "-d", "3", "--seed", "3", "-n", "20"],
                 ["witness", "builtin:mesh-g", "-d", "2", "--seed", "1", "--budget", "20"]):
        first = run(capsys, *argv, "--json")[1]
        assert run(capsys, *argv, "--json")[1] == first


def test_sample(capsys):
    code, rep = run_json(capsys, "sample", "builtin:three-edge", "-d", "2", "--seed", "1", "-n", "20",
                         "--move-lines")
    assert code == 0 and rep == {"9": 20}


def test_gen_random(capsys, tmp_path):
    code, out, _ = run(capsys, "gen-random", "--seed", "4", "--steps", "3", "-d", "2")
    assert code == 0
    code2, out2, _ = run(capsys, "gen-random", "--seed", "4", "--steps", "3", "-d", "2")
    assert out == out2
    mesh = parse_mesh(json.loads(out), validate_mesh=False)
    assert validate(mesh).ok and all(e.n >= 4 for e in mesh.t_edges)
    target = tmp_path / "m.json"
    assert run(capsys, "gen-random", "--seed", "4", "-o", str(target))[0] == 0
    assert run(capsys, "validate", str(target))[0] == 0


def test_render(capsys, tmp_path):
    code, svg, _ = run(capsys, "render", "builtin:grid-2x2")
    assert code == 0 and svg.startswith("<svg")
    assert "stroke-dasharray" not in svg and 'data-kind="t-edge"' not in svg
    out = tmp_path / "k.svg"
    assert run(capsys, "render", "builtin:mesh-k", "-o", str(out))[0] == 0
    text = out.read_text()
    assert text.count('data-kind="t-edge"') == 4
    assert "stroke-dasharray" in text
    assert run(capsys, "render", "builtin:mesh-k", "-o", str(out))[0] == 0
    assert out.read_text() == text
    g = run(capsys, "render", "builtin:mesh-g")[1]
    assert g.count('data-kind="t-edge"') == 6
    assert run(capsys, "render", "builtin:mesh-k", "-o", str(tmp_path / "no" / "dir.svg"))[0] == 1


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "tmeshdim.cli", "dimension", "builtin:mesh-k"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "56"


def test_fixture_documents_round_trip():
    for name in ("mesh-k", "mesh-g", "three-edge"):
        m = load_mesh(name)
        assert parse_mesh(m.to_json()) == m
        assert parse_mesh(load_document(name)) == m
