import io
import json
import subprocess
import sys

import pytest

from fibcode.cli import run
from fibcode.textio import import_text
from fibcode import builders


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_dims():
    code, out = call("dims", "--sides", "6")
    assert code == 0
    assert out.splitlines()[0] == "89 233 322"
    assert "match=yes" in out


def test_counts():
    assert call("counts", "--circuit", "bp", "--sides", "6", "--model", "decomposed") == (
        0, "toffoli=82 cnot=43 rotations=24\n")
    code, out = call("counts", "--circuit", "qv", "--model", "primitive")
    assert code == 0 and "toffoli4=1" in out and "cnot=3" in out


def test_verify_pentagon_json():
    code, out = call("verify", "pentagon")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows[0]["name"] == "pentagon"
    assert rows[0]["cases_passed"] == rows[0]["cases_total"] > 0


def test_verify_deterministic():
    a = call("verify", "bp", "--sides", "3", "--seed", "5")
    b = call("verify", "bp", "--sides", "3", "--seed", "5")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["details"]["seed"] == 5


def test_tiny_tolerance_fails(capsys):
    code, _ = call("verify", "pentagon", "--tol", "1e-30")
    assert code == 1
    assert "verification failed" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "bp"],
    ["counts", "--circuit", "bp", "--model", "decomposed"],
    ["dims", "--sides", "9"],
    ["nonsense"],
    ["measure", "qv", "--state", "/nonexistent/file"],
])
def test_usage_errors(argv, capsys):
    code, out = call(*argv)
    assert code == 2 and out == ""
    assert capsys.readouterr().err


def test_export(tmp_path):
    path = tmp_path / "bp3.txt"
    assert call("export", "--circuit", "bp", "--sides", "3", "--out", str(path))[0] == 0
    assert import_text(path.read_text()) == builders.bp_measure_circuit(3)


def test_measure_qv(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("111 0.6 0\n100 0.8 0\n")
    code, out = call("measure", "qv", "--state", str(path))
    row = json.loads(out)
    assert code == 0
    assert abs(row["prob0"] - 0.36) < 1e-12
    assert row["state0"].startswith("111 1 0")


def test_measure_bp_wrong_size(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("000 1 0\n")
    assert call("measure", "bp", "--sides", "2", "--state", str(path))[0] == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fibcode", "dims", "--sides", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "2 5 7"
