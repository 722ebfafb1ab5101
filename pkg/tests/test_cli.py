"""CLI client: exit codes, output formats, cache determinism."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from baerkit.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestClassifyCommand:
    def test_text_output(self, runner, tmp_path):
        res = runner.invoke(main, ["classify", "zmod 6",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0, res.output
        assert "spec: zmod 6" in res.output
        assert "baer: true" in res.output

    def test_json_output_is_canonical(self, runner, tmp_path):
        res = runner.invoke(main, ["classify", "zmod 6", "--format", "json",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0
        body = json.loads(res.output)
        assert body["passed"] is True
        assert body["result"]["flags"]["semiprime"] is True

    def test_bad_spec_exit_2(self, runner, tmp_path):
        res = runner.invoke(main, ["classify", "zmood 6",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 2

    def test_timing_flag_adds_timing(self, runner, tmp_path):
        res = runner.invoke(main, ["classify", "zmod 4", "--timing",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0
        assert "timing_seconds" in res.output


class TestVerifyCommand:
    def test_suite_passes_exit_0(self, runner, tmp_path):
        res = runner.invoke(main, [
            "verify", "thm12-poly", "zmod 6", "--alpha", "identity",
            "--bound-n", "2", "--bound-d", "3", "--cache-dir", str(tmp_path),
        ])
        assert res.exit_code == 0, res.output
        assert "passed: True" in res.output

    def test_contract_failure_exit_1(self, runner, tmp_path):
        res = runner.invoke(main, [
            "verify", "inverse-thm24", "product (zmod 2) (zmod 2)",
            "--alpha", "swap", "--cache-dir", str(tmp_path),
        ])
        assert res.exit_code == 1
        assert "passed: False" in res.output

    def test_unknown_suite_exit_2(self, runner, tmp_path):
        res = runner.invoke(main, ["verify", "bogus", "zmod 6",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 2

    def test_monoid_option(self, runner, tmp_path):
        res = runner.invoke(main, [
            "verify", "monoid-t1", "zmod 6", "--monoid", "nk 2 revlex",
            "--bound-n", "2", "--cache-dir", str(tmp_path),
        ])
        assert res.exit_code == 0, res.output

    def test_example13(self, runner, tmp_path):
        res = runner.invoke(main, ["verify", "example13", "zmod 2",
                                   "--format", "json",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0
        body = json.loads(res.output)
        assert body["result"]["ab_zero"] is True
        assert body["result"]["a_alpha_b_nonzero"] is True


class TestDeterminism:
    def test_cold_runs_byte_identical(self, runner, tmp_path):
        outs = []
        for sub in ("one", "two"):
            cache = tmp_path / sub
            res = runner.invoke(main, [
                "verify", "thm12-poly", "zmod 6", "--format", "json",
                "--bound-n", "2", "--bound-d", "3", "--cache-dir", str(cache),
            ])
            assert res.exit_code == 0
            outs.append(res.stdout_bytes)
        assert outs[0] == outs[1]

    def test_cache_warm_run_identical(self, runner, tmp_path):
        args = ["classify", "zmod 12", "--format", "json",
                "--cache-dir", str(tmp_path)]
        cold = runner.invoke(main, args)
        warm = runner.invoke(main, args)
        assert cold.exit_code == warm.exit_code == 0
        assert cold.stdout_bytes == warm.stdout_bytes


class TestMineCommand:
    def test_text(self, runner, tmp_path):
        res = runner.invoke(main, ["mine", "zmod", "!semiprime",
                                   "--max-order", "12",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0
        assert "zmod 4" in res.output
        assert "# 4 match(es)" in res.output

    def test_json(self, runner, tmp_path):
        res = runner.invoke(main, ["mine", "zmod", "prime", "--max-order", "7",
                                   "--format", "json",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 0
        body = json.loads(res.output)
        assert [m["spec"] for m in body["matches"]] == [
            "zmod 2", "zmod 3", "zmod 5", "zmod 7"]

    def test_bad_predicate_exit_2(self, runner, tmp_path):
        res = runner.invoke(main, ["mine", "zmod", "(",
                                   "--cache-dir", str(tmp_path)])
        assert res.exit_code == 2


class TestExplainCommand:
    def test_known(self, runner):
        res = runner.invoke(main, ["explain", "baer"])
        assert res.exit_code == 0
        assert "idempotent" in res.output

    def test_unknown_exit_2(self, runner):
        res = runner.invoke(main, ["explain", "bogus"])
        assert res.exit_code == 2


def test_console_script_smoke(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "baerkit.cli", "classify", "zmod 6",
         "--format", "json", "--cache-dir", str(tmp_path)],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["passed"] is True
