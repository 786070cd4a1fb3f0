"""Tests for check results, the report document and the CLI surface."""

import json
from fractions import Fraction

import pytest

from adlercheck.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, main
from adlercheck.config import RunOptions, Suite
from adlercheck.cyclo import gauss_nu, zeta
from adlercheck.report import (
    SCHEMA_VERSION,
    CheckResult,
    CheckStatus,
    Report,
    SuiteReport,
    emit,
    render_human,
    render_json,
)
from adlercheck.suites import SuiteRunner, render, render_values, run


def _report() -> Report:
    suite = SuiteReport(name="arithmetic")
    suite.checks.append(CheckResult.compare("a", "arithmetic", "ref a", "1", "1", 1.23456))
    suite.checks.append(CheckResult.compare("b", "arithmetic", "ref b", "2", "3"))
    suite.checks.append(CheckResult(id="c", suite="arithmetic", paper_ref="ref c",
                                    status=CheckStatus.SKIPPED))
    suite.rows.append({"j": 4, "index": 19 ** 4})
    return Report(suites=[suite])


# ── Report ──────────────────────────────────────────────────────────


class TestCheckResult:
    def test_compare(self):
        assert CheckResult.compare("x", "s", "r", "5", "5").status is CheckStatus.PASS
        assert CheckResult.compare("x", "s", "r", "5", "-5").status is CheckStatus.FAIL

    def test_to_dict(self):
        d = CheckResult.compare("x", "s", "r", "5", "5", 2.71828).to_dict()
        assert d == {"id": "x", "suite": "s", "paper_ref": "r", "status": "pass",
                     "expected": "5", "actual": "5", "duration": 2.718}


class TestReport:
    def test_summary(self):
        report = _report()
        assert report.summary() == {"passed": 1, "failed": 1, "skipped": 1}
        assert report.failed

    def test_json_document(self):
        doc = json.loads(render_json(_report()))
        assert doc["version"] == SCHEMA_VERSION
        assert doc["suites"][0]["name"] == "arithmetic"
        assert [c["status"] for c in doc["suites"][0]["checks"]] == ["pass", "fail", "skipped"]
        assert doc["suites"][0]["rows"] == [{"j": 4, "index": 130321}]

    def test_human_shows_failures(self):
        text = render_human(_report())
        assert "[FAIL   ] b" in text
        assert "expected: 2" in text
        assert text.rstrip().endswith("1 passed, 1 failed, 1 skipped")

    def test_emit_to_file(self, tmp_path):
        path = tmp_path / "report.json"
        text = emit(_report(), "json", path)
        assert path.read_text() == text

    def test_emit_to_stdout(self, capsys):
        emit(_report(), "human")
        assert "== arithmetic ==" in capsys.readouterr().out


# ── Suite runner ────────────────────────────────────────────────────


class TestRendering:
    def test_equal_values_render_equal(self):
        left, right = render_values(zeta(5, 1) * zeta(5, 4), 1)
        assert left == right

    def test_lists(self):
        nu = gauss_nu()
        left, right = render_values([1, nu], [Fraction(2, 2), nu])
        assert left == right
        assert render_values([1], [1, 2])[0] == "[1]"

    def test_dicts_are_sorted(self):
        assert render({"b": 1, "a": [2, 3]}) == "{a: [2, 3], b: 1}"


class TestSuiteRunner:
    def test_exception_becomes_failure(self):
        runner = SuiteRunner(Suite.ARITHMETIC, RunOptions())
        result = runner.check("boom", "ref", 1, lambda: 1 / 0)
        assert result.status is CheckStatus.FAIL
        assert result.actual.startswith("ZeroDivisionError")

    def test_heavy_checks_are_skipped(self):
        runner = SuiteRunner(Suite.GROUP, RunOptions())
        result = runner.check("slow", "ref", 1, lambda: 1, heavy=True)
        assert result.status is CheckStatus.SKIPPED

    def test_passing_check(self):
        runner = SuiteRunner(Suite.ARITHMETIC, RunOptions())
        assert runner.check("nu", "ref", 5, lambda: gauss_nu() * gauss_nu().conj()).status is CheckStatus.PASS
        assert len(runner.report.checks) == 1

    def test_arithmetic_suite_passes(self):
        report = run(RunOptions(suite=Suite.ARITHMETIC))
        assert [s.name for s in report.suites] == ["arithmetic"]
        assert report.summary()["failed"] == 0
        assert report.summary()["passed"] > 10

    def test_characters_suite_checks_w20_1_branching(self):
        suite = run(RunOptions(suite=Suite.CHARACTERS)).suites[0]
        checks = {c.id: c for c in suite.checks}
        assert checks["restrict-W20_1"].status is CheckStatus.PASS
        assert suite.rows[0]["W20_1_on_h"] == {"V1": 1, "V8": 1, "V9": 1, "V9bar": 1}

    def test_jacobian_suite_checks_the_fixed_coefficient(self):
        options = RunOptions(suite=Suite.JACOBIAN, lambdas=(Fraction(0), Fraction(1, 3)))
        checks = {c.id: c for c in run(options).suites[0].checks}
        assert checks["coefficient-x4^2x5"].status is CheckStatus.PASS
        assert checks["coefficient-x4^2x5"].expected == "[1, 1, 1]"
        assert checks["hodge-numbers-all"].status is CheckStatus.SKIPPED


# ── CLI ─────────────────────────────────────────────────────────────


class TestCli:
    def test_arithmetic_json(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["--suite", "arithmetic", "--format", "json", "--out", str(out)])
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["summary"]["failed"] == 0

    def test_config_error_exit_code(self, capsys):
        assert main(["--suite", "topology"]) == EXIT_CONFIG
        assert "Configuration error" in capsys.readouterr().err

    def test_bad_prime_exit_code(self):
        assert main(["--prime", "4"]) == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "nope.conf")]) == EXIT_CONFIG

    def test_failure_exit_code(self, monkeypatch):
        import adlercheck.cli as cli

        monkeypatch.setattr(cli, "run", lambda options: _report())
        monkeypatch.setattr(cli, "emit", lambda report, fmt, path: "")
        assert cli.main(["--suite", "arithmetic"]) == EXIT_FAILED

    def test_flags_override_config(self, tmp_path):
        from adlercheck.cli import build_parser, resolve_options

        path = tmp_path / "run.conf"
        path.write_text("suite = lattice\nheavy = true\n")
        args = build_parser().parse_args(["--config", str(path), "--suite", "group"])
        options = resolve_options(args)
        assert options.suite is Suite.GROUP
        assert options.heavy is True


@pytest.mark.heavy
class TestFullRun:
    def test_every_suite_passes(self):
        report = run(RunOptions(heavy=True))
        failures = [c.id for c in report.checks() if c.status is CheckStatus.FAIL]
        assert failures == []
