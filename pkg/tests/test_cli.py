import json
import subprocess
import sys

import pytest

from laurentia.cli import export_report, load_report, main, run_check
from laurentia.corpus import example_names, example_text

COMMANDS = ["inspect", "standardize", "check", "bgg", "chain", "resolve", "cellularize"]


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


@pytest.mark.parametrize("command", COMMANDS)
def test_skew_c2_commands_pass(command, capsys):
    assert main([command, "skew_c2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith(f"{command} skew_c2: pass")


def test_failure_exit_code(capsys):
    assert main(["check", "cycle_zero"]) == 1
    assert "SC1 fails" in capsys.readouterr().out


def test_class_override(capsys):
    assert main(["check", "dual_numbers", "--class", "polynomial"]) == 1
    assert main(["check", "dual_numbers", "--class", "any"]) == 0


def test_truncated_values_are_marked(capsys):
    main(["standardize", "skew_c2"])
    out = capsys.readouterr().out
    assert "1 + q^4 + q^8 + O(q^9)" in out


def test_input_errors_exit_2(tmp_path, capsys):
    mixed = write(tmp_path, "mixed.toml", """
[algebra]
mode = "quiver"
vertices = ["a"]
arrows = [{name = "x", src = "a", dst = "a", degree = 1}, {name = "y", src = "a", dst = "a", degree = 2}]
relations = ["x*x*x - y"]
[window]
max_degree = 4
""")
    assert main(["check", mixed]) == 2
    err = capsys.readouterr().err
    assert "line 6" in err
    empty = write(tmp_path, "empty.toml", '[algebra]\nmode = "quiver"\nvertices = []\n')
    assert main(["inspect", empty]) == 2
    assert main(["inspect", str(tmp_path / "missing.toml")]) == 2
    assert main(["check", "skew_c2", "--field", "4"]) == 2
    assert main(["cellularize", "skew_c2", "--field", "2"]) == 2


def test_file_input_matches_builtin(tmp_path):
    path = write(tmp_path, "skew.toml", example_text("skew_c2"))
    a = run_check(path, "check")
    b = run_check("skew_c2", "check")
    assert a.data == b.data and a.passed == b.passed


@pytest.mark.parametrize("name", example_names())
def test_json_round_trip_is_byte_identical(name):
    rep = run_check(name, "check")
    blob = export_report(rep, "json")
    again = export_report(load_report(blob), "json")
    assert blob == again
    assert json.loads(blob)["passed"] == rep.passed


def test_reports_are_deterministic(monkeypatch):
    a = export_report(run_check("skew_c2", "check"), "json")
    b = export_report(run_check("skew_c2", "check"), "json")
    assert a == b
    monkeypatch.setenv("LAURENTIA_THREADS", "4")
    c = export_report(run_check("skew_c2", "check"), "json")
    assert a == c


def test_json_flag_writes_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["bgg", "a2_path", "--json", str(out), "--format", "json"]) == 0
    assert out.read_bytes() == capsys.readouterr().out.encode()


def test_window_flag(capsys):
    main(["standardize", "poly_line", "--window", "4"])
    assert "1 + q^2 + q^4 + O(q^5)" in capsys.readouterr().out


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "laurentia.cli", "inspect", "a2_path"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "cartan" in r.stdout
