from __future__ import annotations

import json

import pytest

from cubforge.cli import main, normalized_command
from cubforge.graph import complete_bipartite, to_json
from cubforge.sizeable import pg_incidence


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--out", str(out), "--no-timing"])
    return code, json.loads(out.read_text()), out


@pytest.fixture
def k22(tmp_path):
    p = tmp_path / "k22.json"
    p.write_text(json.dumps(to_json(complete_bipartite(2, 2))))
    return p


def test_verify_rejects_k22_with_witness(tmp_path, k22):
    code, rep, _ = run(tmp_path, "sizeable", "verify", "--input", str(k22))
    assert code == 1 and rep["verdict"] is False
    assert rep["failures"][0]["witness"] == [0, 2, 1, 3]
    m = rep["manifest"]
    assert m["command"] == ["sizeable", "verify", "--input", str(k22)]
    assert len(m["inputs"][str(k22)]) == 64 and "wall_clock_seconds" not in m


def test_generated_graph_verifies(tmp_path):
    code, _, gen = run(tmp_path, "sizeable", "gen-arithmetic", "--n", "9", "--normal", "8", "7", "2", "1", "2",
                       name="a9.json")
    assert code == 0
    code, rep, _ = run(tmp_path, "sizeable", "verify", "--input", str(gen))
    assert code == 0 and rep["verdict"]


def test_parse_error_has_a_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  oops\n}")
    assert main(["sizeable", "verify", "--input", str(bad)]) == 2
    err = capsys.readouterr().err
    assert f"{bad}:2:3" in err


def test_edge_list_parse_error(tmp_path, capsys):
    bad = tmp_path / "g.txt"
    bad.write_text("a b\nc\n")
    assert main(["sizeable", "verify", "--input", str(bad)]) == 2
    assert f"{bad}:2" in capsys.readouterr().err


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main(["sizeable", "verify", "--input", str(tmp_path / "missing.json")]) == 2
    assert main(["sizeable", "gen-pg", "--order", "4"]) == 2
    assert main(["no-such-group"]) == 2


def test_reports_independent_of_threads(tmp_path):
    pg = pg_incidence(3)
    sub, _ = pg.delete_vertices([0, 14])
    g = tmp_path / "pg24.json"
    g.write_text(json.dumps(to_json(sub)))
    _, one, p1 = run(tmp_path, "sizeable", "search", "--input", str(g), "--threads", "1", name="one.json")
    _, two, p2 = run(tmp_path, "sizeable", "search", "--input", str(g), "--threads", "2", name="two.json")
    assert p1.read_bytes() == p2.read_bytes()
    assert len(one["partitions"]) == 108


def test_normalized_command_drops_execution_options():
    argv = ["x", "euler", "--preset", "min24", "--threads", "4", "--out", "r.json", "--no-timing", "--progress"]
    assert normalized_command(argv) == ["x", "euler", "--preset", "min24"]
    assert normalized_command(["a", "--threads=3", "--out=r"]) == ["a"]


def test_x_euler_family_verdict(tmp_path):
    code, rep, _ = run(tmp_path, "x", "euler", "--family", "5")
    assert code == 1 and rep["formula"] == -25600
    code, rep, _ = run(tmp_path, "x", "euler", "--preset", "min24")
    assert code == 0


def test_zk_and_c4(tmp_path):
    code, rep, _ = run(tmp_path, "sizeable", "zk", "--n", "11", "--c", "12")
    assert code == 0
    code, rep, _ = run(tmp_path, "sizeable", "c4", "--n", "4", "--trials", "2000", "--seed", "1")
    assert rep["manifest"]["seed"] == 1


def test_branch_commands(tmp_path):
    assert run(tmp_path, "branch", "locus")[0] == 0
    assert run(tmp_path, "branch", "validate")[0] == 0
    code, rep, _ = run(tmp_path, "branch", "holonomy")
    assert code == 0 and rep["loops"] == 36
    code, rep, _ = run(tmp_path, "branch", "euler", "--p", "5", "--census")
    assert code == 0
    assert main(["branch", "label", "--q", "4"]) == 2


def test_repro_joins(tmp_path):
    code, rep, _ = run(tmp_path, "repro", "joins")
    assert code == 0 and rep["verdict"]


def test_morse_homology_of_a_sphere(tmp_path):
    cx = tmp_path / "s2.json"
    cx.write_text(json.dumps({"n": 4,
                              "triangles": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]}))
    code, rep, _ = run(tmp_path, "morse", "homology", "--complex", str(cx))
    assert code == 0 and rep["summary"] == "(0, 0, Z)" and rep["rational_betti"] == [0, 0, 1]
