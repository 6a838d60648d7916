"""CLI subcommands end to end, via the click test runner."""

import json

import pytest
from click.testing import CliRunner

from quadgor.cli import main

EX42 = "field GF 32003\nvars x y z w\nx^2\ny^2\nz^2\nw^2\nx*y + z*w\n"
DUAL = "field QQ\nvars y\ny^2\n"


@pytest.fixture()
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_analyze_ex42(runner, tmp_path):
    path = _write(tmp_path, "ex42.ideal", EX42)
    result = runner.invoke(main, ["analyze", path, "--koszul-bound", "3", "--jmax", "4"])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["status"] == "ok"
    assert body["report"]["h_vector"] == [1, 4, 5]
    assert body["report"]["type"] == 5
    assert body["report"]["flags"]["superlevel"] is True
    assert body["koszul"]["verdict"] == "non-koszul-witness"
    assert body["koszul"]["witness"] == [3, 4]
    assert body["betti"]["entries"]["3,5"] == 16
    assert body["betti"]["entries"]["2,4"] == 15


def test_analyze_persists_certificate(runner, tmp_path):
    path = _write(tmp_path, "dual.ideal", DUAL)
    out = tmp_path / "certs"
    result = runner.invoke(main, ["analyze", path, "--out", str(out)])
    assert result.exit_code == 0
    files = list(out.glob("dual-*.cert.json"))
    assert len(files) == 1
    assert json.loads(files[0].read_text())["status"] == "ok"


def test_analyze_char_override(runner, tmp_path):
    path = _write(tmp_path, "dual.ideal", DUAL)
    result = runner.invoke(main, ["analyze", path, "--char", "101"])
    assert result.exit_code == 0
    assert json.loads(result.output)["input"]["field"] == "GF(101)"


def test_analyze_rejects_bad_file(runner, tmp_path):
    path = _write(tmp_path, "bad.ideal", "field QQ\nvars x y\nx^2 + y\n")
    result = runner.invoke(main, ["analyze", path])
    assert result.exit_code == 2


def test_idealize_emits_reingestable_file(runner, tmp_path):
    path = _write(tmp_path, "ex42.ideal", EX42)
    emit = tmp_path / "tilde.ideal"
    result = runner.invoke(main, ["idealize", path, "--emit-ideal", str(emit)])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["idealization"]["h_vector"] == [1, 9, 9, 1]
    assert body["idealization"]["report"]["flags"]["gorenstein"] is True
    # the emitted file parses and reproduces the same ring
    result2 = runner.invoke(
        main, ["analyze", str(emit), "--koszul-bound", "1", "--jmax", "2"]
    )
    assert result2.exit_code == 0, result2.output
    body2 = json.loads(result2.output)
    assert body2["report"]["h_vector"] == [1, 9, 9, 1]


def test_catalog_list_and_run(runner):
    result = runner.invoke(main, ["catalog", "list"])
    assert result.exit_code == 0
    assert "ex42" in result.output
    result = runner.invoke(main, ["catalog", "run", "ex42"])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["status"] == "ok"
    assert body["results"][0]["id"] == "ex42"


def test_catalog_run_unknown_id(runner):
    result = runner.invoke(main, ["catalog", "run", "nope"])
    assert result.exit_code == 2


def test_catalog_run_arg_validation(runner):
    result = runner.invoke(main, ["catalog", "run"])
    assert result.exit_code == 2
    result = runner.invoke(main, ["catalog", "run", "ex42", "--all"])
    assert result.exit_code == 2


def test_generic_command(runner):
    result = runner.invoke(main, ["generic", "--n", "4", "--g", "5", "--seed", "1"])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["generic"]["h_vector"] == [1, 4, 5]
    assert body["generic"]["superlevel"] is True
    assert body["generic"]["froberg_witness"] == 6
    assert body["idealization"]["h_vector"] == [1, 9, 9, 1]


def test_gaps_command(runner):
    result = runner.invoke(main, ["gaps", "--cmax", "30"])
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["gap_analysis"]["missing"] == [10, 11, 14, 15, 18, 19, 24]
    assert body["gap_analysis"]["threshold"] == 8
    assert body["admissible_ranges"]["4"]["c_values"] == [9]


def test_tensor_command(runner, tmp_path):
    path = _write(tmp_path, "dual.ideal", DUAL)
    result = runner.invoke(main, ["tensor", path, path, "--koszul-bound", "2"])
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["report"]["h_vector"] == [1, 2, 1]
    assert body["input"]["variables"] == ["y", "y_b"]
