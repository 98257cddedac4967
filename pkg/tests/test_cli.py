import json
import subprocess
import sys
from pathlib import Path

import pytest

from hhkit.cli import run

DATA = Path(__file__).parent / "data"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_monogenic_example(capsys):
    code, out, _ = call(capsys, "monogenic", "--field", "Q", "--poly", "X^3 - X^2", "--pmax", "6", "--verify")
    assert code == 0
    assert "d = X\n" in out and "q = X^2 - X\n" in out
    assert "u = 0" in out and "w = -2" in out
    assert "dims: 3,1,1,1,1,1,1" in out
    assert "verification: PASS" in out


def test_monogenic_bracket_table(capsys):
    code, out, _ = call(capsys, "monogenic", "--poly", "X^3 - X^2", "--bracket-table", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["bracket_table"]["[zeta,tau]"] == "(-2) zeta"


def test_triangle_happel_json(capsys):
    code, out, _ = call(capsys, "algebra", str(DATA / "triangle.json"), "happel", "--vertex", "1", "--pmax", "4",
                        "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["report"]["hh_A"] == [2, 1, 0, 0, 0]
    assert doc["dims"] == {"0": 2, "1": 1, "2": 0, "3": 0, "4": 0}


def test_circle_pair(capsys):
    code, out, _ = call(capsys, "poset", str(DATA / "circle.json"), "cohomology", "--ideal", "a", "b", "--pmax", "3")
    assert code == 0 and "relative dims: 0,2,0,0" in out


def test_poset_hh_and_plain_cohomology(capsys):
    code, out, _ = call(capsys, "poset", str(DATA / "circle.json"), "hh", "--pmax", "2")
    assert code == 0 and "HH dims: 1,1,0" in out
    code, out, _ = call(capsys, "poset", str(DATA / "circle.json"), "cohomology", "--pmax", "2")
    assert code == 0 and "H dims: 1,1,0" in out


def test_algebra_actions(capsys):
    tri = str(DATA / "triangle.json")
    code, out, _ = call(capsys, "algebra", tri, "hh", "--pmax", "2")
    assert code == 0 and "HH dims: 2,1,0" in out
    code, out, _ = call(capsys, "algebra", tri, "homological", "--vertex", "2", "--json")
    assert code == 0 and json.loads(out)["report"]["verdict"] == "not homological"
    code, out, _ = call(capsys, "algebra", tri, "five-term", "--vertex", "1")
    assert code == 0
    code, out, _ = call(capsys, "algebra", tri, "five-term", "--ideal", "alpha", "--json")
    assert code == 0 and "interior_exact" in json.loads(out)["report"]


def test_crown_exit_codes(capsys):
    code, _, err = call(capsys, "crown", "--n", "2", "--m", "2", "--pmax", "3")
    assert code == 3 and "h0_equals_h2" in err
    code, _, _ = call(capsys, "crown", "--n", "2", "--m", "2", "--length", "4", "--pmax", "3")
    assert code == 0


def test_verify_suite(capsys):
    code, out, _ = call(capsys, "verify")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["monogenic", "--poly", "2*X^2"],
    ["monogenic", "--poly", "X^2", "--pmax", "17"],
    ["monogenic", "--poly", "X^2", "--field", "F6"],
    ["algebra", "missing.json", "hh"],
    ["algebra", str(DATA / "triangle.json"), "happel"],
    ["algebra", str(DATA / "triangle.json"), "happel", "--vertex", "2"],
    ["algebra", str(DATA / "triangle.json"), "happel", "--vertex", "7"],
    ["poset", str(DATA / "circle.json"), "cohomology", "--ideal", "c"],
])
def test_input_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert err.startswith("error: ") and err.count("\n") == 1


def test_usage_error(capsys):
    assert run(["nonsense"]) == 2


def test_json_round_trip_and_determinism(capsys):
    argv = ["algebra", str(DATA / "triangle.json"), "happel", "--vertex", "1", "--pmax", "3", "--json"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second
    doc = json.loads(first)
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == first


def test_field_override_on_file(capsys):
    code, out, _ = call(capsys, "algebra", str(DATA / "triangle.json"), "hh", "--field", "F2", "--pmax", "2")
    assert code == 0 and "HH dims: 2,1,0" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hhkit.cli", "monogenic", "--poly", "X^2", "--pmax", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "dims: 2,1,1" in proc.stdout
