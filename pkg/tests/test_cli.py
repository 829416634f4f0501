"""Command-line surface: exit codes, report round-trips, determinism."""

import json
import subprocess
import sys

import pytest

from splitrep.cli import (
    EXIT_LOWER_BOUND,
    EXIT_TABLE_MISMATCH,
    EXIT_USAGE,
    EXIT_VALIDATION,
    RunReport,
    main,
)


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "splitrep.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc


class TestAnalyze:
    def test_disjoint_clean(self, capsys):
        assert main(["analyze", "0001110", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "no disjoint length-2 pair" in out
        assert "period: 6" in out

    def test_split_clean(self, capsys):
        assert main(["analyze", "0011", "--t", "1"]) == 0
        out = capsys.readouterr().out
        assert "no split 1-overlap" in out
        assert "no reversed split 1-overlap" in out

    def test_violation_reported(self, capsys):
        assert main(["analyze", "00110", "--t", "1"]) == 0
        out = capsys.readouterr().out
        assert "split-t-overlap" in out

    def test_empty_word_is_usage_error(self):
        proc = run_cli("analyze", "")
        assert proc.returncode == EXIT_USAGE

    def test_malformed_word_is_usage_error(self):
        proc = run_cli("analyze", "01a1")
        assert proc.returncode == EXIT_USAGE

    def test_symbol_out_of_range(self):
        proc = run_cli("analyze", "012", "--k", "2")
        assert proc.returncode == EXIT_USAGE


class TestSearchCommand:
    def test_exact_exit_zero(self, capsys):
        assert main(["search", "S", "--k", "3", "--t", "1"]) == 0
        out = capsys.readouterr().out
        assert "max_length: 9" in out
        assert "witness: 012021012" in out

    def test_lower_bound_exit_three(self, capsys):
        code = main(["search", "C", "--k", "2", "--n", "5",
                     "--budget", "100", "--split-depth", "0"])
        assert code == EXIT_LOWER_BOUND

    def test_missing_param_usage(self):
        proc = run_cli("search", "C", "--k", "2")
        assert proc.returncode == EXIT_USAGE

    def test_json_round_trip(self, capsys):
        assert main(["search", "R", "--k", "2", "--t", "2", "--json"]) == 0
        text = capsys.readouterr().out
        report = RunReport.from_json(text)
        assert RunReport.from_json(report.to_json()) == report
        assert report.outcome["max_length"] == 15
        assert report.outcome["witness"] == "010001100111001"
        assert report.outcome["witness_verified"] is True

    def test_thread_determinism_modulo_elapsed(self, capsys):
        assert main(["search", "C", "--k", "2", "--n", "4", "--json",
                     "--threads", "1"]) == 0
        first = json.loads(capsys.readouterr().out)
        assert main(["search", "C", "--k", "2", "--n", "4", "--json",
                     "--threads", "8"]) == 0
        second = json.loads(capsys.readouterr().out)
        first["elapsed"] = second["elapsed"] = None
        first["params"]["threads"] = second["params"]["threads"] = None
        assert first == second

    def test_frontier_with_checkpoint(self, tmp_path, capsys):
        ckpt = tmp_path / "c.ckpt"
        code = main(["search", "C", "--k", "2", "--n", "6", "--frontier",
                     "--budget", "20000", "--checkpoint", str(ckpt)])
        assert code == EXIT_LOWER_BOUND
        assert ckpt.exists()
        code = main(["search", "C", "--k", "2", "--n", "6", "--frontier",
                     "--budget", "20000", "--resume", str(ckpt)])
        assert code == EXIT_LOWER_BOUND
        out = capsys.readouterr().out
        assert "nodes: 40000" in out


class TestBoundsCommand:
    def test_c_family(self, capsys):
        assert main(["bounds", "--family", "C", "--k", "2", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "'period-sum': '<= 7'" in out
        assert "'pigeonhole': '<= 9'" in out
        assert "'closed-form': '<= 14'" in out

    def test_s_family_t0(self, capsys):
        assert main(["bounds", "--family", "S", "--k", "2", "--t", "0"]) == 0
        assert "'repeated-letter-exact': '= 2'" in capsys.readouterr().out

    def test_s_family_unary(self, capsys):
        assert main(["bounds", "--family", "S", "--k", "1", "--t", "4"]) == 0
        assert "'unary-exact': '= 11'" in capsys.readouterr().out

    def test_missing_param(self):
        proc = run_cli("bounds", "--family", "C", "--k", "2")
        assert proc.returncode == EXIT_USAGE


class TestConstructCommand:
    def test_c3(self, capsys):
        assert main(["construct", "c3", "--k", "3"]) == 0
        out = capsys.readouterr().out
        assert "length: 41" in out
        assert "no_disjoint_length_3_pair: True" in out

    def test_debruijn(self, capsys):
        assert main(["construct", "debruijn", "--k", "2", "--n", "3"]) == 0
        assert "length: 10" in capsys.readouterr().out

    def test_witness(self, capsys):
        assert main(["construct", "witness", "--x", "010"]) == 0
        out = capsys.readouterr().out
        assert "word: 01010" in out
        assert "occurrences: 2" in out


class TestTableCommand:
    def test_table_2_matches(self, capsys):
        assert main(["table", "2"]) == 0
        out = capsys.readouterr().out
        assert "mismatches: 0" in out

    def test_table_3_matches(self, capsys):
        assert main(["table", "3"]) == 0
        assert "mismatches: 0" in capsys.readouterr().out

    @pytest.mark.stretch
    def test_table_1_matches(self, capsys):
        assert main(["table", "1"]) == 0
        out = capsys.readouterr().out
        assert "mismatches: 0" in out
        assert "witness_match=True" in out

    def test_table_3_with_budget_reports_lower_bounds(self, capsys):
        assert main(["table", "3", "--budget-per-cell", "2000"]) == 0
        out = capsys.readouterr().out
        assert "mismatches: 0" in out
        assert "skipped" not in out
        assert ">=" in out

    def test_table_mismatch_exits_four(self, capsys, monkeypatch):
        import splitrep.cli as cli
        from splitrep.knownvalues import KnownCell

        wrong = [KnownCell(table="S", k=2, param=1, relation="=", value=5)]
        monkeypatch.setattr(cli, "load_known_cells", lambda: wrong)
        assert main(["table", "2"]) == EXIT_TABLE_MISMATCH
        assert "mismatches: 1" in capsys.readouterr().out


class TestValidationExitCode:
    def test_unverifiable_witness_exits_five(self, capsys, monkeypatch):
        import splitrep.cli as cli

        monkeypatch.setattr(cli, "verify_witness", lambda problem, w: False)
        code = main(["search", "S", "--k", "2", "--t", "1"])
        assert code == EXIT_VALIDATION
        assert "witness_verified: False" in capsys.readouterr().out
