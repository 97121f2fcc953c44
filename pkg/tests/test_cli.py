"""End-to-end command-line checks."""

import json
import os

from fukaya_flow.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_complement_homology_betti_line(capsys):
    code, out, _ = run(capsys, "complement-homology", "--fixture", "unknot",
                       "--framings", "1")
    assert code == 0
    assert out == "1 1 0 0\n"


def test_verify_theorem_b_success(capsys):
    code, out, _ = run(capsys, "verify-theorem-b", "--fixture", "hopf",
                       "--framings", "0,0")
    assert code == 0
    blob = json.loads(out)
    assert blob["schema"] == "fukaya-flow/1"
    assert blob["data"]["isomorphic"] is True
    assert blob["data"]["dictionary"]["y2^1"] == "K-^1"


def test_maslov_cli(capsys):
    code, out, _ = run(capsys, "maslov", "--loop",
                       "[[0,0],[1,6.283185307]]", "--convention", "dy^dx")
    assert code == 0
    assert out == "-1\n"


def test_maslov_arcs_cli(capsys):
    arcs = "[[[0,0],[1,0]],[[0,3.14159265358979],[1,3.14159265358979]]]"
    code, out, _ = run(capsys, "maslov", "--arcs", arcs)
    assert code == 0
    assert out == "-1\n"


def test_glued_index_cli(capsys):
    code, out, _ = run(capsys, "glued-index", "--triangle-system", "3,-1,-1")
    assert code == 0
    assert out == "index_H 2\nindex_V 2\n"
    code, out, _ = run(capsys, "glued-index", "--base-dim", "6")
    assert code == 0
    assert "index_V 4" in out
    parts = json.dumps([{"name": "a", "index": 2, "punctures": {"p": 2}},
                        {"name": "b", "index": 2, "punctures": {"q": 2}}])
    gluings = json.dumps([["a", "p", "b", "q"]])
    code, out, _ = run(capsys, "glued-index", "--parts", parts,
                       "--gluings", gluings)
    assert code == 0
    assert out == "2\n"


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "parse-link", "--pd", "X(1,2,3)")
    assert code == 2
    assert "error" in err
    code, _, err = run(capsys, "parse-link", "--pd", "")
    assert code == 2
    code, out, _ = run(capsys, "parse-link", "--pd", "", "--allow-empty")
    assert code == 0


def test_no_fixtures_flag(capsys):
    code, _, err = run(capsys, "linking-matrix", "--fixture", "hopf",
                       "--no-fixtures")
    assert code == 2


def test_morse_bott_case_one(capsys):
    code, out, _ = run(capsys, "morse-bott", "case-I", "--pair", "lower")
    assert code == 0
    assert "d y1 = b1" in out
    assert "homology basis: y1' y2" in out


def test_morse_bott_handles(capsys):
    code, out, _ = run(capsys, "morse-bott", "handles", "--fixture", "hopf")
    assert code == 0
    assert out == "1 2 1 0\n"


def test_cascade_diagnostics(capsys):
    code, out, _ = run(capsys, "cascade-diagnostics", "--pair", "upper",
                       "--source", "x1'", "--target", "a1",
                       "--cascades", "1")
    assert code == 0
    assert json.loads(out)["points"] == [["3/4", "0"]]
    code, out, _ = run(capsys, "cascade-diagnostics", "--pair", "upper",
                       "--source", "x2", "--target", "a0",
                       "--cascades", "2")
    assert code == 0
    assert out == "no configurations\n"


def test_geometry_check(capsys):
    code, out, _ = run(capsys, "geometry-check", "--samples", "25")
    assert code == 0
    assert out.count("PASS") == 4


def test_categories_json_and_dot(capsys):
    code, out, _ = run(capsys, "flow-category", "--fixture", "unknot",
                       "--framings", "1")
    assert code == 0
    blob = json.loads(out)
    assert blob["schema"] == "fukaya-flow/1"
    assert blob["data"]["objects"] == ["x_4", "x_2^1", "x_0"]
    code, out, _ = run(capsys, "fukaya-category", "--fixture", "unknot",
                       "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_deterministic_stdout(capsys):
    argv = ("fukaya-category", "--fixture", "3-chain",
            "--framings", "1,0,1")
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_emit_figure_files(tmp_path, capsys):
    csv_path = tmp_path / "curves.csv"
    code, _, _ = run(capsys, "emit-figure", "--format", "csv",
                     "--grid-n", "16", "--out", str(csv_path))
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "curve_id,theta,lambda,re,im"
    assert len(lines) > 17
    svg_path = tmp_path / "curves.svg"
    code, _, _ = run(capsys, "emit-figure", "--format", "svg",
                     "--grid-n", "16", "--out", str(svg_path))
    assert code == 0
    assert svg_path.read_text().startswith("<svg")
    # writes are atomic: no temp files left behind
    assert all(not name.startswith(".fukaya-flow-")
               for name in os.listdir(tmp_path))


def test_unwritable_output_exit_2(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "out.csv"
    code, _, err = run(capsys, "emit-figure", "--format", "csv",
                       "--grid-n", "8", "--out", str(target))
    assert code == 2
    assert "cannot write" in err


def test_fixture_env_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "alt.catalog"
    path.write_text("solo ; O(3) ; 2\n")
    monkeypatch.setenv("FUKAYA_FLOW_FIXTURES", str(path))
    code, out, _ = run(capsys, "linking-matrix", "--fixture", "solo")
    assert code == 0
    assert out == "2\n"


def test_pd_from_file(tmp_path, capsys):
    path = tmp_path / "link.pd"
    path.write_text("X(1,3,2,4),X(3,1,4,2)\n")
    code, out, _ = run(capsys, "linking-matrix", "--file", str(path))
    assert code == 0
    assert out == "0 1\n1 0\n"


def test_verify_failure_exit_code(capsys, monkeypatch):
    # force a mismatch report to exercise exit code 1 and the stderr diff
    import fukaya_flow.fukaya as fukaya_mod

    real = fukaya_mod.verify_theorem_b

    def fake(fl):
        report = real(fl)
        return fukaya_mod.TheoremBReport(report.dictionary, False,
                                         ("forced mismatch",))

    monkeypatch.setattr("fukaya_flow.cli.fukaya.verify_theorem_b", fake)
    code, out, err = run(capsys, "verify-theorem-b", "--fixture", "unknot")
    assert code == 1
    assert "forced mismatch" in err
