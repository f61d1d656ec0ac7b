import json
import subprocess
import sys

import pytest

from fglkit import cli, verify
from fglkit.fgl import multiplicative, universal
from fglkit.report import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_c_coeffs(capsys):
    code, out, _ = run(capsys, "table", "c-coeffs", "--precision", "6")
    assert code == 0
    data = json.loads(out)
    entries = {e["key"]: e["value"] for e in data["entries"]}
    assert entries["c1"] == "-2*m1"
    assert entries["c3"] == "-2*m3 + 6*m1*m2 - 4*m1^3"
    assert data["config"] == {"precision": "6"}
    assert data["report"]["pass"] is True


def test_table_kozma(capsys):
    code, out, _ = run(capsys, "table", "kozma", "--prime", "2", "--max-k", "3")
    assert code == 0
    values = {e["key"]: e["value"] for e in json.loads(out)["entries"]}
    assert values["T(2,1)"] == "2*m1"
    assert values["T(2,2)"] == "2*m3 - 4*m1^3"
    code, out, _ = run(capsys, "table", "kozma", "--prime", "3", "--max-k", "1")
    assert json.loads(out)["entries"][0]["value"] == "3*m2"


def test_table_epsilon2_images_text(capsys):
    code, out, _ = run(capsys, "table", "epsilon2-images", "--precision", "5", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# epsilon2-images"
    assert "m1 = 0" in lines and "m2 = m2" in lines and "m3 = 0" in lines and "m4 = m4" in lines


def test_json_numbers_are_strings(capsys):
    _, out, _ = run(capsys, "table", "c-coeffs", "--precision", "4")
    data = json.loads(out)

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, (int, float)) or isinstance(x, bool)
    walk(data)


def test_apply_epsilon2_and_e2(tmp_path, capsys):
    path = tmp_path / "mult.json"
    path.write_text(json.dumps(multiplicative(6).to_json()))
    code, out, _ = run(capsys, "apply", "epsilon2", "--fgl", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["idempotent"] == "epsilon2"
    assert data["log"]["coeffs"][2] == []
    code, out, _ = run(capsys, "apply", "e2", "--fgl", str(path), "--format", "text")
    assert code == 0 and out.startswith("log = X")
    assert "theta = X - 1/2*u*X^2" in out


def test_apply_on_odd_law_notes(tmp_path, capsys):
    from fglkit.idempotents import epsilon2
    path = tmp_path / "odd.json"
    path.write_text(json.dumps(epsilon2(multiplicative(6)).law.to_json()))
    code, out, _ = run(capsys, "apply", "e2", "--fgl", str(path))
    notes = json.loads(out)["notes"]
    assert code == 0
    assert "theta = X: the input law is already odd" in notes and "law unchanged" in notes


def test_verify_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "series-calculus", "--precision", "6", "--trials", "3")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True and data["suite"] == "series-calculus"
    assert data["config"] == {"precision": "6", "seed": "0", "trials": "3"}


def test_verify_failure_exits_one(monkeypatch, capsys):
    def broken(cfg):
        rep = Report("fgl-axioms")
        rep.add("injected", False)
        return rep
    monkeypatch.setitem(verify.RUNNERS, "fgl-axioms", broken)
    code, out, _ = run(capsys, "verify", "fgl-axioms", "--format", "text")
    assert code == 1
    assert "injected: FAIL" in out and "overall: FAIL" in out


def test_verify_crash_exits_one(monkeypatch, capsys):
    def crash(cfg):
        raise ZeroDivisionError("boom")
    monkeypatch.setitem(verify.RUNNERS, "witt-groups", crash)
    code, out, _ = run(capsys, "verify", "witt-groups")
    assert code == 1
    assert json.loads(out)["checks"][0]["name"] == "suite-completed"


@pytest.mark.parametrize("argv", [
    ["table", "c-coeffs", "--precision", "999"],
    ["table", "c-coeffs", "--precision", "1"],
    ["table", "kozma", "--prime", "4"],
    ["table", "kozma", "--max-k", "0"],
    ["verify", "all", "--trials", "0"],
    ["verify", "nonsense"],
    ["table", "c-coeffs", "--precision", "2.5"],
    ["apply", "epsilon2"],
    [],
])
def test_usage_errors_exit_two(argv, capsys):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_input_files_exit_two(tmp_path, capsys):
    missing = tmp_path / "missing.json"
    assert run(capsys, "apply", "e2", "--fgl", str(missing))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "apply", "e2", "--fgl", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"generators": [], "log": {"truncation": 3, "coeffs": 5}}))
    assert run(capsys, "apply", "e2", "--fgl", str(wrong))[0] == 2
    floaty = tmp_path / "float.json"
    data = multiplicative(4).to_json()
    data["log"]["coeffs"][2] = [[0.5, {"u": 1}]]
    floaty.write_text(json.dumps(data))
    code, _, err = run(capsys, "apply", "e2", "--fgl", str(floaty))
    assert code == 2 and "error" in err


def test_out_file(tmp_path, capsys):
    target = tmp_path / "table.json"
    code, out, _ = run(capsys, "table", "c-coeffs", "--precision", "5", "--out", str(target))
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "table", "c-coeffs", "--precision", "5")
    assert target.read_text() == out


def test_determinism_in_process(capsys):
    outs = [run(capsys, "verify", "idempotents", "--precision", "6", "--trials", "3", "--seed", "5")[1]
            for _ in range(2)]
    assert outs[0] == outs[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fglkit", "table", "kozma", "--max-k", "2",
                           "--format", "text"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "T(2,2) = 2*m3 - 4*m1^3" in proc.stdout
