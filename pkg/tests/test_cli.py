import json
import subprocess
import sys

import pytest

from crepant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pade_prints_rational(capsys):
    code, out, _ = run(capsys, "pade", "--coeffs", "0,1,1,1,1,1", "--num", "1", "--den", "1")
    assert code == 0
    assert out.splitlines()[0] == "q/(1 - q)"


def test_pade_value_and_json(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "pade", "--coeffs", "0,1,1,1,1,1", "--at", "-1", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["value"] == "-1/2" and data["degrees"] == [1, 1]


def test_pade_failure_names_error(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, out, _ = run(capsys, "pade", "--coeffs", "0,1,0,1,0,1", "--num", "1", "--den", "1", "--json", str(path))
    assert code == 1
    assert "NoRationalForm" in out
    assert json.loads(path.read_text())["failure"]["error"] == "NoRationalForm"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 2
    assert run(capsys, "pade", "--coeffs", "0,1,1,1", "--num", "1")[0] == 2
    assert run(capsys, "pade", "--coeffs", "0,1,(", "--num", "1", "--den", "1")[0] == 2
    assert run(capsys, "chartable", "--group", "Q8x")[0] == 2
    assert run(capsys, "a1-verify", "--order", "3")[0] == 2
    assert run(capsys, "chartable", "--group-file", "/nonexistent/file")[0] == 2


def test_a1_verify_small(capsys, tmp_path):
    path = tmp_path / "a1.json"
    code, out, _ = run(capsys, "a1-verify", "--order", "9", "--branch", "-1", "--json", str(path))
    assert code == 0 and "PASS" in out
    data = json.loads(path.read_text())
    assert data["passed"] and data["matched_degrees"] == list(range(7))


def test_a1_verify_wrong_transform(capsys, tmp_path):
    spec = tmp_path / "t.json"
    spec.write_text(json.dumps({"L": [["1", "0"], ["0", "1"]], "roots": ["-1"], "s": 0, "r": 1}))
    code, out, _ = run(capsys, "a1-verify", "--order", "7", "--transform", str(spec))
    assert code == 1
    assert "MismatchAt" in out


def test_sym_report_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "sym-report", "--n", "3", "--order", "8", "--seed", "7", "--json", str(a))[0] == 0
    assert run(capsys, "sym-report", "--n", "3", "--order", "8", "--seed", "7", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_sym_matrix(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, out, _ = run(capsys, "sym-matrix", "--n", "2", "--order", "6", "--resum", "--json", str(path))
    assert code == 0
    assert "c[2][2]" in out
    assert json.loads(path.read_text())["kind"] == "q"


def test_chartable_file(capsys, tmp_path):
    perm = tmp_path / "s3.perm"
    perm.write_text("(1 2)\n(1 2 3)\n")
    code, out, _ = run(capsys, "chartable", "--group-file", str(perm))
    assert code == 0
    assert "order 6" in out


def test_crc_transform_composes(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "crc-transform", "--group", "Z2", "--verify-order", "7", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["transform"]["L_exact"][1][1] == {"re": "0", "im": "-1"}
    assert data["verification"]["passed"]


def test_crc_transform_a4(capsys):
    code, out, _ = run(capsys, "crc-transform", "--group", "A4")
    assert code == 0 and "q3 = exp(2 pi i * 1/4)" in out


def test_extend_potential(capsys, tmp_path):
    path = tmp_path / "e.json"
    code, out, _ = run(capsys, "extend-potential", "--order", "5", "--json", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert data["vars"] == ["x0", "x1", "u1"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "crepant", "pade", "--coeffs", "0,1,1,1,1,1", "--num", "1", "--den", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "q/(1 - q)"
