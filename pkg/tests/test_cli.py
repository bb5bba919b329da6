import json
import subprocess
import sys

import pytest
from conftest import degree10_curve

from curvesing import cli
from curvesing.singularity import CheckResult

CUSP = "a = s^2*v\nb = s^3\nc = v^3\n"
NODE = {"a": "v*(s^2 - v^2)", "b": "s*(s^2 - v^2)", "c": "[0, 0, 0, 1]"}
PAIR = "mode = rational-pair\nA = t^2\nC = t - 1\nB = t^3\nD = t + 1\n"
DEGREE10 = ("a = s^2*(2*s+v)^2*(s+v)^6\n"
           "b = s^3*(2*s+v)^5*(3*s^2+2*s*v+v^2)\n"
           "c = -(s+v)^10\n")


def run(tmp_path, capsys, text, *args):
    path = tmp_path / "in.txt"
    path.write_text(text)
    code = cli.main(["--input", str(path), *args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_input_forms():
    spec = cli.parse_input(CUSP)
    assert spec.mode == "projective"
    assert spec.parameterization().n == 3
    arrays = cli.parse_input(json.dumps({"a": [0, 0, 1, 0], "b": "[0,0,0,1]",
                                         "c": "v^3", "degree": 3}))
    assert arrays.parameterization() == spec.parameterization()
    assert cli.parse_input(PAIR).mode == "rational-pair"
    with pytest.raises(cli.InputError, match="degree"):
        cli.parse_input(json.dumps({"a": [1, 0, 1], "b": "s^3", "c": "v^3", "degree": 3}))


def test_array_convention():
    spec = cli.parse_input(json.dumps({"a": [1, 0, 0, 1], "b": "s^2*v", "c": "s*v^2"}))
    # entry i is the coefficient of s^i v^(d-i)
    assert cli.form_array(spec.forms["a"]) == [1, 0, 0, 1]
    assert str(spec.forms["a"]) in ("s^3 + v^3", "v^3 + s^3")


def test_degree10_text_parses_to_reference_coefficients():
    spec = cli.parse_input(DEGREE10)
    assert spec.parameterization() == degree10_curve()


@pytest.mark.parametrize("text, message", [
    ("a = s^2 + v\nb = s^2\nc = v^2\n", "not homogeneous"),
    ("a = (s+v\nb = s^3\nc = v^3\n", "position"),
    ("a = s^3\nb = s^2*v\nc = s*v^2\n", "gcd"),
    ("a = s^3\nb = v^3\n", "missing c"),
    ("{\"a\": ", "invalid JSON"),
    ("mode = rational-pair\nA = t^2 - 1\nC = t - 1\nB = t\nD = t + 2\n", "coprime"),
])
def test_input_errors_exit_2(tmp_path, capsys, text, message):
    code, out, err = run(tmp_path, capsys, text)
    assert code == cli.EXIT_INPUT
    assert message in err and out == ""


def test_unknown_check_is_input_error(tmp_path, capsys):
    code, _, err = run(tmp_path, capsys, CUSP, "--checks", "bogus")
    assert code == 2 and "bogus" in err


def test_cusp_report(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, CUSP)
    assert code == 0
    doc = json.loads(out)
    assert doc["mu"] == 1
    assert doc["d"]["2"] == [0, 0, 1]
    assert doc["delta"] == [0, 0, 1]
    assert all(c["passed"] for c in doc["checks"].values())
    assert set(doc["checks"]) == set(cli.PROJECTIVE_CHECKS)


def test_node_is_ordinary(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, json.dumps(NODE))
    doc = json.loads(out)
    assert code == 0 and doc["ordinary"] is True
    assert doc["d"]["2"] == [-1, 0, 1]
    assert doc["d"]["3"] == [1]


def test_pair_report(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, PAIR)
    doc = json.loads(out)
    assert code == 0
    assert doc["checks"]["d_resultant_general"]["passed"]
    assert doc["delta_common"] == [1, 0]  # u


def test_no_checks_is_minimal(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, CUSP, "--checks", "none")
    assert code == 0 and json.loads(out)["checks"] == {}


def test_output_is_deterministic_and_round_trips(tmp_path, capsys):
    _, first, _ = run(tmp_path, capsys, CUSP, "--seed", "4")
    _, second, _ = run(tmp_path, capsys, CUSP, "--seed", "4")
    assert first == second
    _, third, _ = run(tmp_path, capsys, first)
    assert json.loads(third)["d"] == json.loads(first)["d"]
    assert json.loads(third)["seed"] == 0


def test_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CURVESING_SEED", "9")
    _, out, _ = run(tmp_path, capsys, CUSP, "--checks", "none")
    assert json.loads(out)["seed"] == 9
    monkeypatch.setenv("CURVESING_SEED", "x")
    code, _, _ = run(tmp_path, capsys, CUSP)
    assert code == 2


def test_failing_check_exits_1_with_witness(tmp_path, capsys, monkeypatch):
    def broken(delta, sf):
        return CheckResult("delta_product", False, {"delta": "t^2", "product": "t^3"})
    monkeypatch.setattr(cli, "check_delta_product", broken)
    code, out, _ = run(tmp_path, capsys, CUSP, "--checks", "delta_product")
    doc = json.loads(out)
    assert code == cli.EXIT_CHECK
    assert doc["checks"]["delta_product"] == {
        "passed": False, "witness": {"delta": "t^2", "product": "t^3"}}


def test_internal_error_exits_3(tmp_path, capsys, monkeypatch):
    def boom(*a, **k):
        raise ArithmeticError("forced")
    monkeypatch.setattr(cli, "compute_mu_basis", boom)
    code, _, err = run(tmp_path, capsys, CUSP)
    assert code == cli.EXIT_INTERNAL and "forced" in err


def test_text_format_and_extras(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, json.dumps(NODE), "--format", "text", "--approx-roots")
    assert code == 0 and "multiplicity 2" in out
    code, out, _ = run(tmp_path, capsys, CUSP, "--dump-matrices", "--timing")
    doc = json.loads(out)
    assert "sylvester" in doc["matrices"] and "seconds" in json.dumps(doc)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "curvesing", "--checks", "none"],
                          input=CUSP, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mu"] == 1


def test_degree10_all_checks_pass(tmp_path, capsys):
    code, out, _ = run(tmp_path, capsys, DEGREE10)
    doc = json.loads(out)
    assert code == 0
    assert doc["mu"] == 4
    assert doc["d"]["6"] == [1, 6, 15, 20, 15, 6, 1]
    assert doc["d"]["5"] == [1]
    failed = [k for k, c in doc["checks"].items() if not c["passed"]]
    assert failed == []


def test_non_birational_input_exits_3(tmp_path, capsys):
    code, out, err = run(tmp_path, capsys, "a = s^4\nb = s^2*v^2\nc = v^4\n")
    assert code == cli.EXIT_INTERNAL
    assert out == "" and "[curvesing.smithlab]" in err
