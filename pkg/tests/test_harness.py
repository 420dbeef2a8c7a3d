import json

import pytest

from bext.expr import ParseError, parse_expression
from bext.harness.catalog import builtin_catalog, builtin_names
from bext.harness.cli import main
from bext.harness.runner import emit_report, run_checks
from bext.harness.scenario import UnknownCheck, parse_scenario

EX2_TEXT = """name my_ex2
base p=2 vars=t
step s: s^2 + s + t
auto s -> s + 1
check classify skew
"""


def test_malformed_exponent_reports_second_caret():
    with pytest.raises(ParseError) as err:
        parse_scenario("base p=2 vars=t\nstep a: a^^2 + t\n")
    assert (err.value.line, err.value.column) == (2, 11)
    with pytest.raises(ParseError) as err:
        parse_expression("x^^2")
    assert err.value.column == 3


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        parse_scenario("base p=2 vars=t\nstep a: a^2 + t\ncheck classify wobble\n")


def test_parse_errors_carry_positions():
    for text in ["base p=4\nstep a: a^2 + 1\n", "base p=2 vars=t\nstep a: a^2 + q\n", "base p=2\nstep a a^2\n"]:
        with pytest.raises(ParseError) as err:
            parse_scenario(text)
        assert err.value.line >= 1 and err.value.column >= 1


def test_catalog():
    names = builtin_names()
    assert len(names) >= 8
    for s in builtin_catalog():
        assert s.expect and s.checks


def test_scenario_file_runs(tmp_path):
    s = parse_scenario(EX2_TEXT)
    report = run_checks(s)
    assert [c.status for c in report.checks] == ["pass", "pass"]
    data = json.loads(emit_report(report, "json"))
    assert data["scenario"] == "my_ex2"
    assert all(c["millis"] is None for c in data["checks"])


def test_cli_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text(EX2_TEXT)
    assert main(["verify", str(good)]) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text(EX2_TEXT.replace("s -> s + 1", "s -> s + t"))
    assert main(["verify", str(bad), "--format", "json"]) == 1
    broken = tmp_path / "broken.txt"
    broken.write_text("base p=2 vars=t\nstep a: a^^2\n")
    assert main(["verify", str(broken)]) == 2
    assert main(["verify", "no_such_scenario"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert main(["catalog"]) == 0
    assert "ex3" in capsys.readouterr().out


def test_describe(capsys):
    assert main(["describe", "ex3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["degrees"] == [2, 2] and out["dims"]["L_G_dif"] == 1
