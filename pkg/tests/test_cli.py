import json
import subprocess
import sys

import pytest

from qmatrix.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf_relation_four(capsys):
    code, out, _ = run(capsys, "nf", "Y[2,2]*Y[1,1]", "--n", "2")
    assert code == 0
    assert out.strip() == "Y[1,1]*Y[2,2] - (q - q^-1)*Y[1,2]*Y[2,1]"


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "tau(Y[1,3])", "--json")
    assert code == 0 and json.loads(out) == {"element": "Y[3,1]", "shape": [3, 3]}


def test_verify_and_replay(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3")
    assert code == 0 and "14/14 passed" in out
    code, out, _ = run(capsys, "verify", "--n", "2", "--json")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "replay", "--q", "2")
    assert code == 0


def test_verify_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"n": 2, "records": [
        {"name": "wrong", "lhs": "Y[1,2]*Y[1,1]", "rhs": "Y[1,1]*Y[1,2]", "anchor": "none"}]}))
    code, out, _ = run(capsys, "verify", "--n", "2", "--manifest", str(path), "--json")
    assert code == 1
    rec = json.loads(out)["records"][0]
    assert rec["status"] == "fail" and rec["residual"] == "-(1 - q^-1)*Y[1,1]*Y[1,2]"


def test_center_json_is_stable(capsys):
    code, out, _ = run(capsys, "center", "--n", "3", "--maxdeg", "3", "--q", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["dim"] == 2 and data["basis"][1] == "1"
    assert data["basis"][0].startswith("Y[1,1]*Y[2,2]*Y[3,3]")
    assert data["residuals"] == ["0", "0"]
    code, again, _ = run(capsys, "center", "--n", "3", "--maxdeg", "3", "--q", "2", "--json")
    assert again == out


def test_center_exact(capsys):
    code, out, _ = run(capsys, "center", "--n", "2", "--maxdeg", "2", "--exact")
    assert code == 0 and out.startswith("dim 2")


def test_derivations(capsys):
    code, out, _ = run(capsys, "derivations", "--n", "2", "--shift", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 4 and data["comparison"] == "equal"
    assert data["witness_space_not_inner"] is None


def test_normal_check_and_twist(capsys):
    code, out, _ = run(capsys, "normal-check", "b(2)", "--json")
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["q_central"]
    code, out, _ = run(capsys, "normal-check", "Y[1,1]")
    assert code == 1 and "not q-central" in out
    code, out, _ = run(capsys, "twist", "Y[1,3]", "Y[1,1]")
    assert code == 0 and out.strip() == "-1"
    code, _, _ = run(capsys, "twist", "Y[1,1]", "Y[2,2]", "--n", "2")
    assert code == 1


def test_minor_and_det(capsys):
    code, out, _ = run(capsys, "minor", "1,2", "1,2", "--n", "2")
    assert code == 0 and out.strip() == "Y[1,1]*Y[2,2] - q*Y[1,2]*Y[2,1]"
    code, out, _ = run(capsys, "det", "--n", "2", "--q", "3")
    assert code == 0 and out.strip() == "Y[1,1]*Y[2,2] - 3*Y[1,2]*Y[2,1]"


@pytest.mark.parametrize("argv", [
    ["nf", "Y[1,"],
    ["nf", "Y[4,1]"],
    ["nf", "det(3)", "--n", "2"],
    ["det", "--m", "2", "--n", "3"],
    ["minor", "2,1", "1,2"],
    ["bogus"],
    ["nf", "q", "--q", "1"],
    ["nf", "q", "--q", "abc"],
    ["verify", "--n", "5"],
    ["replay", "--n", "2"],
    ["verify", "--manifest", "/nonexistent.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_syntax_error_message(capsys):
    code, _, err = run(capsys, "nf", "Y[1,")
    assert code == 2 and "position 5" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmatrix", "nf", "b(6)"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
