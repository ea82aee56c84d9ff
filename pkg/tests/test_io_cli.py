import json
import subprocess
import sys
from fractions import Fraction

import pytest

from conftest import FIXTURES, load
from equidescent.cli import main
from equidescent.errors import ParseError, ValidationError
from equidescent.io import (dump_output, dump_problem, dumps, load_json, parse_output, parse_problem,
                            parse_scalar, problem_from_json, report_from_json, report_to_json)
from equidescent.verify import verify_output

BASE = {"ground": "R", "r": 1, "d": 1, "P": "z - t", "bindings": ["pi"],
        "variables": ["x1"], "polynomials": ["x1 - t"], "epsilon": "1/100"}


def doc(**kw):
    out = dict(BASE)
    out.update(kw)
    return out


# -- formats ------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["cusp.json", "sqrt_pi.json", "groebner.json"])
def test_problem_round_trip_is_byte_identical(name):
    text = dump_problem(load(name))
    assert dump_problem(parse_problem(text)) == text


@pytest.mark.parametrize("run", ["cusp_run", "sqrt_pi_run", "groebner_run"])
def test_output_round_trip(run, request):
    problem, out = request.getfixturevalue(run)
    text = dump_output(out, problem)
    back = parse_output(text, problem)
    assert dump_output(back, problem) == text
    assert back.q == out.q
    assert [str(g) for g in back.outputs] == [str(g) for g in out.outputs]
    assert verify_output(problem, back).status == "pass"


def test_report_round_trip(cusp_run):
    problem, out = cusp_run
    rep = verify_output(problem, out)
    js = report_to_json(rep)
    assert report_to_json(report_from_json(js)) == js
    json.dumps(js)  # plain JSON all the way down


def test_floats_are_rejected():
    with pytest.raises(ParseError):
        load_json('{"epsilon": 0.01}')
    with pytest.raises(ParseError):
        load_json('{"epsilon": ')


@pytest.mark.parametrize("bad, where", [
    (doc(bindings=["not_a_constant"]), "bindings[0]"),
    (doc(d=2), "d"),
    (doc(bindings=[]), "bindings"),
    (doc(ground="Q"), "ground"),
    (doc(d=2, P="z^2 - t"), "z_selector"),
    (doc(bindings=[{"re": "1", "im": "2"}]), "bindings"),
    (doc(epsilon="-1"), None),
])
def test_invalid_problems(bad, where):
    with pytest.raises(ValidationError) as info:
        problem_from_json(bad)
    if where is not None:
        assert where in str(info.value)


def test_scalars():
    assert parse_scalar("3/7").refine(10).center == Fraction(3, 7)
    assert abs(parse_scalar("e").refine(40).center.re - Fraction(2718281828, 10 ** 9)) < Fraction(1, 10 ** 8)
    assert parse_scalar({"re": "1", "im": "-1/2"}).real is False
    oracle = parse_scalar({"oracle": [sys.executable, str(FIXTURES.parent / "oracle_sqrt2.py")], "index": 0})
    c = oracle.refine(50).center.re
    assert abs(c * c - 2) < Fraction(1, 2 ** 45)


def test_dumps_is_deterministic():
    obj = {"b": ["1/3", 2], "a": {"x": "y"}}
    assert dumps(obj) == dumps(json.loads(dumps(obj)))
    assert dumps(obj).endswith("\n")


# -- command line -------------------------------------------------------------------------

def run_cli(args, capsys):
    code = main(args)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_descend_then_verify(tmp_path, capsys):
    problem = str(FIXTURES / "cusp.json")
    result = tmp_path / "out.json"
    code, _, _ = run_cli(["descend", problem, "-o", str(result)], capsys)
    assert code == 0
    first = result.read_text()
    code, _, _ = run_cli(["descend", problem, "-o", str(result)], capsys)
    assert result.read_text() == first
    code, out, err = run_cli(["verify", problem, str(result)], capsys)
    assert code == 0
    assert json.loads(out)["status"] == "pass"
    assert "closeness: pass" in err


def test_verify_exit_code_on_tampered_result(tmp_path, capsys):
    problem = str(FIXTURES / "cusp.json")
    result = tmp_path / "out.json"
    run_cli(["descend", problem, "-o", str(result)], capsys)
    data = json.loads(result.read_text())
    data["q"] = ["4"]
    data["outputs"] = ["x2^2 - 4*x1^3"]
    data["algebra"]["modulus"] = "z - 4"
    data["algebra"]["box"] = ["4", "4", "0", "0"]
    result.write_text(json.dumps(data))
    code, out, _ = run_cli(["verify", problem, str(result)], capsys)
    assert code == 3
    assert json.loads(out)["status"] == "fail"


def test_usage_errors(tmp_path, capsys):
    assert run_cli(["descend", str(tmp_path / "missing.json")], capsys)[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc(epsilon=0.01)).replace('"0.01"', "0.01"))
    assert run_cli(["descend", str(bad)], capsys)[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1
    assert run_cli(["descend", str(FIXTURES / "cusp.json"), "--epsilon", "-1"], capsys)[0] == 1


def test_computation_failure_exit_code(tmp_path, capsys):
    p = tmp_path / "p.json"
    p.write_text(json.dumps(doc(epsilon="1/100000", grid_cap=2)))
    code, _, err = run_cli(["descend", str(p)], capsys)
    assert code == 2
    assert "SearchExhausted" in err


def test_gendisc_command(capsys):
    code, out, _ = run_cli(["gendisc", "x^2 - 2*x + 1"], capsys)
    assert code == 0
    assert out == "(0, 2), l = 2\n"
    code, out, _ = run_cli(["gendisc", "x^2 - a", "--var", "x"], capsys)
    assert out == "(4*a, 2), l = 1\n"
    assert run_cli(["gendisc", "x^2 - a"], capsys)[0] == 1


def test_track_and_cascade_commands(capsys):
    code, out, _ = run_cli(["track", str(FIXTURES / "sqrt_pi.json"), "--at", "1571/500"], capsys)
    assert code == 0
    res = json.loads(out)
    assert res["q"] == ["1571/500"]
    lo, hi = (Fraction(x) for x in res["box"][:2])
    assert 0 < lo <= hi
    code, out, _ = run_cli(["cascade", str(FIXTURES / "cusp.json")], capsys)
    assert code == 0
    assert json.loads(out)["levels"]


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "equidescent.cli", "gendisc", "x^2 - 2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout == "(8, 2), l = 1\n"
