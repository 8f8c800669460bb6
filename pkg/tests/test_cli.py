import json
import subprocess
import sys

import pytest

from newtonsegre.cli import main

PLANE5 = "x1^2*x2^6,x1^3*x2^4,x1^4*x2^3,x1^5*x2,x1^7"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_plane5(capsys):
    code, out, _ = run(capsys, "compute", "--ideal", PLANE5, "--degrees", "1,1", "--ambient-dim", "5")
    assert code == 0
    assert "- 35278H^5 + 3714H^4 - 334H^3 + 18H^2 + 2H" in out


def test_compute_axes3(capsys):
    code, out, _ = run(capsys, "compute", "--ideal", "x1*x2,x1*x3,x2*x3", "--degrees", "1,1,1", "--ambient-dim", "3")
    assert code == 0
    assert "3H^2 - 10H^3" in out
    assert "conjectural" in out


def test_excess_axes3(capsys):
    code, out, _ = run(capsys, "excess", "--ideal", "x1*x2,x1*x3,x2*x3", "--degrees", "2,2,2")
    assert code == 0
    assert "equivalence: 8  bezout: 8  excess: 0" in out


def test_excess_json(capsys):
    code, out, _ = run(capsys, "excess", "--ideal", "x1*x2,x1*x3,x2*x3", "--degrees", "2,2,2", "--format", "json")
    assert json.loads(out)["excess"] == {"equivalence": 8, "bezout": 8, "excess": 0}


def test_ideal_file(tmp_path, capsys):
    path = tmp_path / "ideal.txt"
    path.write_text("2 6\n3 4\n4 3\n5 1\n7 0\n")
    code, out, _ = run(capsys, "compute", "--ideal-file", str(path), "--degrees", "1,1", "--ambient-dim", "5")
    assert code == 0 and "2H + 18H^2" in out


def test_decompose_json(capsys):
    code, out, _ = run(capsys, "decompose", "--ideal", PLANE5, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {"normal": [2, 1], "offset": 10} in data["polyhedron"]["facets"]
    assert len([c for c in data["cells"] if not c["degenerate"]]) == 4
    assert {c["engine"] for c in data["cells"]} == {"fan"}


def test_decompose_staircase_text(capsys):
    code, out, _ = run(capsys, "decompose", "--ideal", PLANE5, "--engine", "staircase")
    assert code == 0 and "cells (" in out


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--ideal", PLANE5)
    assert code == 0
    assert "FAIL" not in out and "fan = staircase" in out


def test_compute_with_verify_json(capsys):
    code, out, _ = run(capsys, "compute", "--ideal", "x1^2,x2^3", "--verify", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verification"]["ok"] and data["engine"] == "both"


@pytest.mark.parametrize("argv", [
    ["compute", "--ideal", "x1^-1"],
    ["compute", "--ideal", "1 2 / 3"],
    ["compute", "--ideal-file", "/nonexistent/ideal.txt"],
    ["compute", "--ideal", "x1*x2,x1*x3,x2*x3", "--engine", "staircase"],
    ["compute", "--ideal", "x1*x2", "--degrees", "1,2,3"],
    ["compute", "--ideal", "x1*x2", "--degrees", "a,b"],
    ["excess", "--ideal", "x1*x2,x1*x3,x2*x3", "--degrees", "2,2", "--ambient-dim", "3"],
    ["compute"],
    ["frobnicate", "--ideal", "x1"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_seed_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("SEGRE_SEED", "abc")
    code, _, err = run(capsys, "verify", "--ideal", "x1^2,x2^3")
    assert code == 2 and "SEGRE_SEED" in err


def test_verification_failure_exit_1(capsys, monkeypatch):
    import newtonsegre.cli as cli
    from newtonsegre.oracles import Check, OracleReport

    def failing(*args, **kwargs):
        r = OracleReport()
        r.add(Check("forced", False, "1", "2"))
        return r

    monkeypatch.setattr(cli, "cross_check", failing)
    code, out, _ = run(capsys, "verify", "--ideal", "x1^2,x2^3")
    assert code == 1 and "FAIL" in out


def test_output_is_deterministic_and_job_independent(capsys):
    argv = ["compute", "--ideal", "x1*x2,x1*x3,x2*x3", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    _, c, _ = run(capsys, *argv, "--jobs", "2")
    assert a == b == c


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "compute", "--ideal", PLANE5, "--format", "json")
    data = json.loads(out)
    rows = "; ".join(" ".join(map(str, g)) for g in data["generators"])
    _, again, _ = run(capsys, "compute", "--ideal", rows, "--format", "json")
    again = json.loads(again)
    again["ideal"] = data["ideal"]
    assert again == data


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "newtonsegre", "compute", "--ideal", "x1^3*x2^4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "(3*X1 + 4*X2) / (1 + 3X1 + 4X2)" in proc.stdout
