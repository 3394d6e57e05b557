from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from reorilat.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)

    return invoke


def test_analyze_text(run):
    res = run("analyze", "C4")
    assert res.exit_code == 0
    assert "lattice: yes (vertebrate)" in res.output
    assert "|AR|=14" in res.output


def test_analyze_json(run):
    data = json.loads(run("analyze", "K3", "--format", "json").output)
    assert data["size"] == 6 and data["ropes"] == 4 and data["lattice"]


def test_analyze_reads_files(run, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("4\n1 2\n2 3\n3 4\n1 4\n")
    assert "|AR|=14" in run("analyze", str(path)).output


def test_analyze_dot(run):
    assert run("analyze", "P3", "--format", "dot").output.lstrip().startswith("digraph")


def test_analyze_nonlattice(run):
    assert "lattice: no" in run("analyze", "DIA").output


def test_bad_graph_exits_2(run):
    res = run("analyze", "no-such-graph")
    assert res.exit_code == 2
    assert "error:" in res.output


@pytest.mark.parametrize(
    "args, classes",
    [
        (["K4", "--sylvester"], 14),
        (["K3", "--coherent", "DOWN= UP="], 4),
        (["T1", "--principal", "1,3,2,"], 5),
        (["K3", "--cambrian", "DOWN=2"], 5),
    ],
)
def test_quotient_sizes(run, args, classes):
    res = run("quotient", *args, "--format", "json")
    assert res.exit_code == 0, res.output
    assert len(json.loads(res.output)["classes"]) == classes


def test_quotient_selectors_are_exclusive(run):
    assert run("quotient", "K3", "--sylvester", "--cambrian", "DOWN=2").exit_code == 2


def test_quotient_out(run, tmp_path):
    assert run("quotient", "K3", "--sylvester", "--out", str(tmp_path)).exit_code == 0
    assert {"classes.json", "quotient.dot", "ideal.txt"} <= {p.name for p in tmp_path.iterdir()}


def test_polytope(run, tmp_path):
    res = run("polytope", "K3", "--sylvester", "--format", "json", "--out", str(tmp_path))
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["verified"] and data["removahedron_agrees"]
    assert data["vertices"] == 5
    assert (tmp_path / "hrep.txt").exists() and (tmp_path / "vertices.txt").exists()


def test_polytope_is_deterministic(run):
    a = run("polytope", "T1", "--seed", "4", "--format", "json").output
    b = run("polytope", "T1", "--seed", "4", "--format", "json").output
    assert a == b


def test_polytope_needs_skeletal(run):
    res = run("polytope", "C4")
    assert res.exit_code == 2
    assert "NotSkeletal" in res.output


def test_classify_restriction(run):
    data = json.loads(run("classify-restriction", "K3", "P3", "--format", "json").output)
    assert data["pathful"] and not data["strongly_pathful"] and data["witness"] is None


def test_verify_small(run, tmp_path):
    report = tmp_path / "r.json"
    res = run("verify", "--max-vertices", "3", "--only", "1,2,7", "--report", str(report))
    assert res.exit_code == 0
    assert res.output.count("[PASS]") == 3
    assert len(json.loads(report.read_text())["criteria"]) == 3


def test_corpus(run):
    lines = run("corpus", "--max-vertices", "3").output.splitlines()
    assert len(lines) == 1 + 2 + 6
    assert json.loads(lines[2]) == {"n": 2, "arcs": [[1, 2]]}
    skel = run("corpus", "--max-vertices", "3", "--min-vertices", "3", "--skeletal-only").output
    assert all(json.loads(line)["n"] == 3 for line in skel.splitlines())
