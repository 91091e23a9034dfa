import json
import subprocess
import sys

import pytest

from atlas.cli import main


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_group_verify_order(capsys):
    code, rep = run_json(capsys, "group", "--spec", "G(4,2,2)", "--verify-order")
    assert code == 0
    assert rep["schema"] == 1 and rep["status"] == "ok"
    assert rep["result"]["order"] == 16
    assert [c["name"] for c in rep["checks"]] == ["order"]


def test_group_exceptional_full(capsys):
    code, rep = run_json(capsys, "group", "--spec", "ST4")
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)
    assert rep["result"]["presentation"]["st_power_p"] == [3, 6]


def test_group_bad_spec(capsys):
    assert main(["group", "--spec", "ST99"]) == 1
    assert "error" in capsys.readouterr().err


def test_milnor_poly(capsys):
    code, rep = run_json(capsys, "milnor", "--poly", "y^2 - x^3")
    assert code == 0 and rep["result"]["milnor"] == 2


def test_milnor_brieskorn(capsys):
    code, rep = run_json(capsys, "milnor", "--brieskorn", "5", "3", "4")
    assert rep["result"]["milnor"] == 18


def test_gamma(capsys):
    code, rep = run_json(capsys, "gamma", "--d", "4", "--lambda", "zeta(4)")
    assert code == 0
    assert rep["result"]["in_gamma"] is True
    assert rep["result"]["kang_tag"] == "1"
    assert rep["result"]["milnor"] == 9
    code, rep = run_json(capsys, "gamma", "--d", "2", "--lambda", "2")
    assert rep["result"]["in_gamma"] is False


def test_classify_exit_codes(capsys):
    code, rep = run_json(capsys, "classify", "--left", "thmB:3,2", "--right", "thmB:3,3")
    assert code == 2
    assert rep["result"]["witness"]["invariant"] == "milnor"
    code, rep = run_json(capsys, "classify", "--left", "f_2,1,2", "--right", "f_4,4,2")
    assert code == 0 and rep["result"]["verdict"] == "Inconclusive"


def test_map_analyze_from_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"n": 2, "components": ["x", "y^3 - 3*x^2*y"]}))
    code, rep = run_json(capsys, "map", "analyze", "--file", str(path), "--crit", "--proper")
    assert code == 0
    assert rep["result"]["degree"] == 3
    assert rep["result"]["proper"]["status"] == "Proper"
    assert rep["result"]["critical_milnor"] == [1]


def test_map_analyze_modp_with_branch(capsys):
    code, rep = run_json(capsys, "--modp", "map", "analyze", "--spec", "ft4", "--branch",
                         "x^3 + (12 - 24*zeta(6))*y^2")
    assert code == 0
    assert rep["result"]["degree"] == 24 and rep["result"]["degree_mode"] == "modp"


def test_normal_form_row_command(capsys):
    code, rep = run_json(capsys, "table4", "--row", "ft8")
    assert code == 0
    assert rep["result"]["ft8"]["pair"]["degree_product"] == 96


def test_normal_form_catalog_export(capsys):
    code, rep = run_json(capsys, "table4")
    assert code == 0 and len(rep["result"]["rows"]) == 19


def test_reproduce_milnor(capsys):
    code, rep = run_json(capsys, "reproduce", "milnor")
    assert code == 0
    names = [c["name"] for c in rep["checks"]]
    assert names == sorted(names)
    assert len(names) == 16 + 10 + 10
    entry = next(c for c in rep["checks"] if c["name"] == "milnor/plane d=5 a=4")
    assert entry["expected"] == entry["actual"] == 9


def test_json_is_deterministic(capsys):
    argv = ["--json", "--seed", "7", "map", "analyze", "--spec", "thmB1:4,2", "--crit"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_timing_only_when_requested(capsys):
    _, rep = run_json(capsys, "milnor", "--poly", "x*y")
    assert "timing_ms" not in rep
    _, rep = run_json(capsys, "--timing", "milnor", "--poly", "x*y")
    assert rep["timing_ms"] >= 0


def test_human_output(capsys):
    assert main(["group", "--spec", "Z2xZ3"]) == 0
    out = capsys.readouterr().out
    assert "PASS order" in out and "status: ok" in out


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "atlas.cli", "milnor", "--poly", "y^2 - x^3", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["result"]["milnor"] == 2


@pytest.mark.parametrize("argv", [["reproduce", "nothing"], ["map"], []])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
