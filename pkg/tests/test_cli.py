from __future__ import annotations

import json

import pytest

from lcschur.cli import main
from lcschur.graph import graph_to_edgelist, graph_to_json, star_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def claw_file(tmp_path):
    path = tmp_path / "claw.json"
    path.write_text(graph_to_json(star_graph(3)))
    return str(path)


# --- indep ----------------------------------------------------------------------

def test_indep_claw_file(capsys, claw_file):
    code, out, _ = run(capsys, "indep", claw_file)
    assert code == 0
    assert out.splitlines()[0] == "1 + 4t + 3t^2 + t^3, SLC: yes"


def test_indep_edge_list_file(capsys, tmp_path):
    path = tmp_path / "claw.txt"
    path.write_text(graph_to_edgelist(star_graph(3)))
    code, out, _ = run(capsys, "indep", str(path))
    assert code == 0 and out.startswith("1 + 4t + 3t^2 + t^3")


def test_indep_inline(capsys):
    code, out, _ = run(capsys, "indep", "complete", "3")
    assert code == 0 and out.splitlines()[0].startswith("1 + 3t,")
    code, out, _ = run(capsys, "indep", "spider", "3,2,2,1")
    assert code == 0 and "SLC: yes" in out


def test_indep_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3, "edges": [[0, 1], [1]]}')
    code, _, err = run(capsys, "indep", str(path))
    assert code == 2 and "error" in err


def test_indep_json(capsys, claw_file):
    code, out, _ = run(capsys, "indep", claw_file, "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["independence_polynomial"] == ["1", "4", "3", "1"]
    assert doc["strongly_log_concave"] and doc["log_concave"] and doc["unimodal"]


# --- schur2 -------------------------------------------------------------------------

@pytest.mark.parametrize(
    "spec, expected",
    [(["claw"], "s(3,1) - s(2,2)"), (["empty", "2"], "s(2) + s(1,1)"), (["path", "4"], "2 s(2,2)")],
)
def test_schur2_examples(capsys, spec, expected):
    code, out, _ = run(capsys, "schur2", *spec)
    assert code == 0 and out.splitlines()[0] == expected


def test_schur2_alpha(capsys):
    code, out, _ = run(capsys, "schur2", "claw", "--alpha", "0,2,1,1")
    assert code == 0 and out.splitlines()[0] == "s(3,1) + s(2,2)"


def test_schur2_guard(capsys):
    code, _, err = run(capsys, "schur2", "path", "30")
    assert code == 3 and "guard" in err


# --- y ------------------------------------------------------------------------------

def test_y_claw(capsys):
    code, out, _ = run(capsys, "y", "claw")
    assert code == 0
    assert "LC ⇔ 2s-positive: consistent" in out
    assert " - " not in out.splitlines()[0] and not out.startswith("-")


def test_y_single_vertex(capsys):
    code, out, _ = run(capsys, "y", "K1")
    assert code == 0 and out.splitlines()[0] == "1 + s(1) + s(1,1)"


def test_y_oracle(capsys):
    code, out, _ = run(capsys, "y", "claw", "--oracle", "4")
    assert code == 0 and "[match]" in out


def test_y_poly_reports_negative_diagonal(capsys):
    code, out, _ = run(capsys, "y", "--poly", "1,1,3")
    assert code == 0
    assert "negative entry at s(1,1): -2" in out
    assert "log-concave: no" in out


def test_y_poly_with_internal_zero_is_inconsistent(capsys):
    # 1 + t^3 satisfies the literal log-concavity inequalities but not the Toeplitz minors
    code, out, _ = run(capsys, "y", "--poly", "1,0,0,1")
    assert code == 1 and "INCONSISTENT" in out


def test_y_needs_input(capsys):
    assert run(capsys, "y")[0] == 2


# --- verify --------------------------------------------------------------------------

def test_verify_spider_audit(capsys):
    code, out, _ = run(capsys, "verify", "spider", "3,2,2,1", "--audit-phi")
    assert code == 0 and out.startswith("spider 3,2,2,1: PASS")


def test_verify_claw_shows_elimination_table(capsys):
    code, out, _ = run(capsys, "verify", "spider", "1,1,1")
    assert code == 0 and "PASS" in out
    assert "beta=(1, 1, 1) a=3 b=0 case=i critical s(2,2): 1 expected 1" in out


def test_verify_pineapple(capsys):
    code, out, _ = run(capsys, "verify", "pineapple", "6", "3,2,2,1")
    assert code == 0 and out.startswith("pineapple 6 3,2,2,1: PASS")


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "spider", "2,1,1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "PASS" and doc["violations"] == []
    assert set(doc["cases"]) >= {"C1", "C522", "C6"}


@pytest.mark.parametrize("argv", [["verify", "spider", "1,2"], ["verify", "pineapple", "0", "1"], ["verify", "pineapple", "x"]])
def test_verify_bad_input(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# --- scan ------------------------------------------------------------------------------

def test_scan_trees(capsys):
    code, out, _ = run(capsys, "scan", "--trees", "10")
    assert code == 0 and out.startswith("scan trees n<=10: PASS")
    assert "trees: 201" in out


def test_scan_random(capsys):
    code, out, _ = run(capsys, "scan", "--random", "9", "300", "--seed", "1")
    assert code == 0 and "consistent: 300" in out


def test_scan_clawfree(capsys):
    code, out, _ = run(capsys, "scan", "--clawfree", "7")
    assert code == 0 and "PASS" in out


def test_scan_needs_a_corpus(capsys):
    assert run(capsys, "scan")[0] == 2


def test_json_is_byte_identical_across_runs_and_workers(capsys):
    argv = ["scan", "--random", "8", "60", "--seed", "5", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--workers", "2")
    assert first == second == parallel
    assert json.loads(first)["verdict"] == "PASS"


# --- parsing ------------------------------------------------------------------------------

def test_unknown_graph_and_command(capsys):
    assert run(capsys, "indep", "no-such-graph")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "indep", "path", "x")[0] == 2
