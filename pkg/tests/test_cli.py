import json
import subprocess
import sys

import pytest

from coringlab import cli
from coringlab.instance import fixtures_dir


def fx(name):
    return str(fixtures_dir() / f"{name}.json")


def run(capsys, *args):
    code = cli.main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_report_f4(capsys):
    code, out, _ = run(capsys, "exact-report", fx("f4_frobenius"))
    rep = json.loads(out)
    assert code == 0 and rep["exit_code"] == 0
    assert rep["result"]["all_joints_pass"]
    assert rep["result"]["h1"]["group"]["structure"] == "1"
    assert rep["command"] == "exact-report"
    assert rep["instance"]["name"] == "f4_frobenius"


def test_h1_window_shows_nilpotent_coboundary(capsys):
    code, out, _ = run(capsys, "h1", fx("dualnumbers_graded"), "--window", "-2..2")
    rep = json.loads(out)
    assert code == 0
    assert rep["options"]["window"] == [-2, 2]
    assert {"element": {"0": [1, 1], "1": [0, 1]}, "units": [[1, 1]]} in rep["result"]["image_d"]
    assert [c["coords"] for c in rep["result"]["cosets"]] == [[-2], [-1], [0], [1], [2]]
    zero = rep["result"]["cosets"][2]
    assert zero["representative"] == {"0": [1, 0]}
    assert {"0": [1, 1], "1": [0, 1]} in zero["members"]


def test_group_h1_on_grading_is_usage_error(capsys):
    code, out, err = run(capsys, "group-h1", fx("dualnumbers_graded"))
    assert code == 2 and out == "" and "dual variant" in err


def test_idempotent_grouplikes_on_action_is_usage_error(capsys):
    code, _, err = run(capsys, "idempotent-grouplikes", fx("f4_frobenius"))
    assert code == 2 and "grading" in err


@pytest.mark.parametrize("args", [
    ("h1", "/nonexistent.json"),
    ("frobnicate", "x.json"),
    ("h1", "x.json", "--window", "3..1"),
    ("h1", "x.json", "--window", "abc"),
    ("iso", "FIXTURE"),
    ("iso", "FIXTURE", "--x", "[1, 2]"),
    ("iso", "FIXTURE", "--x", '{"0": [0, 1]}'),
])
def test_usage_errors_exit_2(capsys, args):
    args = [fx("f4_frobenius") if a == "FIXTURE" else a for a in args]
    code, _, _ = run(capsys, *args)
    assert code == 2


def test_invalid_instance_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"field": {"kind": "prime", "p": 2},
                             "algebra": {"preset": "poly_quotient", "modulus": [1, 0, 1]},
                             "hopf": {"variant": "group", "group": {"preset": "Z"}},
                             "coaction": {"degrees": [0, 1]}}))
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "c_{11}^0" in err


def test_reports_are_byte_stable(capsys):
    for cmd in ("grouplikes", "h1", "exact-report", "twist", "e-test"):
        _, a, _ = run(capsys, cmd, fx("dualnumbers_graded"), "--window", "-1..1", "--no-timing")
        _, b, _ = run(capsys, cmd, fx("dualnumbers_graded"), "--window", "-1..1", "--no-timing")
        assert a == b
        assert "timing" not in json.loads(a)


def test_timing_is_segregated(capsys):
    _, a, _ = run(capsys, "h1", fx("f3_trivial_c2"))
    _, b, _ = run(capsys, "h1", fx("f3_trivial_c2"))
    ra, rb = json.loads(a), json.loads(b)
    assert list(ra)[-1] == "timing"
    ra.pop("timing"), rb.pop("timing")
    assert ra == rb


def test_property_violation_exits_1(capsys, monkeypatch):
    real = cli.hilbert90_report

    def broken(ctx, cap):
        rep = real(ctx, cap)
        rep["holds"] = False
        return rep

    monkeypatch.setattr(cli, "hilbert90_report", broken)
    code, out, _ = run(capsys, "hilbert90", fx("f4_frobenius"))
    assert code == 1 and json.loads(out)["verdict"] == "property violation"


def test_every_command_on_every_applicable_fixture(capsys):
    dual = ["f4_frobenius", "f3_trivial_c2", "f2xf2_swap"]
    graded = ["dualnumbers_graded", "f2xf2_graded", "f3_group_algebra_c2"]
    for name in dual + graded:
        for cmd in ("check", "grouplikes", "h1", "exact-report", "e-test", "twist"):
            code, out, err = run(capsys, cmd, fx(name), "--window", "-1..1")
            assert code == 0, (name, cmd, err)
            assert json.loads(out)["verdict"] == "ok"
    for name in dual:
        for cmd in ("group-h1", "hilbert90"):
            assert run(capsys, cmd, fx(name))[0] == 0
    for name in graded:
        assert run(capsys, "idempotent-grouplikes", fx(name), "--window", "-1..1")[0] == 0


def test_grouplikes_both_solvers(capsys):
    code, out, _ = run(capsys, "grouplikes", fx("dualnumbers_graded"), "--window", "0..1", "--method", "both")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["solvers_agree"] and rep["result"]["count"] == 3


def test_iso_and_twist_with_elements(capsys):
    code, out, _ = run(capsys, "iso", fx("dualnumbers_graded"), "--x", '{"0": [1, 1], "1": [0, 1]}')
    rep = json.loads(out)
    assert code == 0 and rep["result"]["isomorphic"] == "yes"
    code, out, _ = run(capsys, "iso", fx("f2xf2_graded"), "--x", '{"0": [1, 0], "1": [0, 1]}')
    assert json.loads(out)["result"]["isomorphic"] == "no"
    code, out, _ = run(capsys, "e-test", fx("f2xf2_graded"), "--x", '{"0": [1, 0], "1": [0, 1]}')
    rep = json.loads(out)
    assert code == 0 and rep["result"]["elements"][0]["in_E"] is False


def test_idempotent_grouplikes_reports_nilpotent_twists(capsys):
    code, out, _ = run(capsys, "idempotent-grouplikes", fx("dualnumbers_graded"), "--window", "0..1")
    rep = json.loads(out)["result"]
    assert code == 0 and not rep["reduced"] and not rep["bijective"]
    assert rep["not_of_idempotent_form"] == [{"0": [1, 1], "1": [0, 1]}]


def test_text_output(capsys):
    code, out, _ = run(capsys, "h1", fx("f3_trivial_c2"), "--text")
    assert code == 0 and "H^1 = Z/2" in out


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "coringlab.cli", "h1", fx("f4_frobenius"), "--no-timing"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["group"]["structure"] == "1"
