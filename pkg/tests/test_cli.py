"""Command-line behavior: outputs, formats, and exit codes."""

import json

import pytest
from click.testing import CliRunner

from laplace_ci.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestIntervalCommand:
    def test_exact_published_case(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "2",
                                      "--alpha", "0.05", "--method", "exact"])
        assert result.exit_code == 0
        assert "lower 0.11811733" in result.output
        assert "upper 0.77722167" in result.output

    def test_normal_boundary_case(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "0",
                                      "--alpha", "0.05", "--method", "normal"])
        assert result.exit_code == 0
        assert "lower 0.00000000" in result.output
        assert "upper 0.00000000" in result.output

    def test_x_exceeding_n_exits_2(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "6",
                                      "--alpha", "0.05"])
        assert result.exit_code == 2
        assert "x must not exceed n" in result.output

    def test_odd_k_exits_2(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "2", "--k", "101"])
        assert result.exit_code == 2

    def test_bad_alpha_exits_2(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "2",
                                      "--alpha", "1.5"])
        assert result.exit_code == 2

    def test_k_over_guard_exits_3(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "2",
                                      "--k", str(1 << 27)])
        assert result.exit_code == 3

    def test_one_sided(self, runner):
        result = runner.invoke(main, ["interval", "--n", "1", "--x", "0",
                                      "--side", "upper-bound", "--k", "4096"])
        assert result.exit_code == 0
        assert "lower 0.00000000" in result.output

    def test_json_format(self, runner):
        result = runner.invoke(main, ["interval", "--n", "5", "--x", "1",
                                      "--method", "clopper-pearson", "--fmt", "json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["method"] == "clopper-pearson"
        assert payload["lower"] == "0.00505076"


class TestTableCommand:
    def test_table_vii_small_k(self, runner):
        result = runner.invoke(main, ["table", "--paper-table", "VII", "--k", "16384"])
        assert result.exit_code == 0
        assert len(result.output.strip().splitlines()) == 11  # title + header + 9 rows

    def test_unknown_table_exits_2(self, runner):
        result = runner.invoke(main, ["table", "--paper-table", "IX"])
        assert result.exit_code == 2

    def test_csv_format(self, runner):
        result = runner.invoke(main, ["table", "--paper-table", "II",
                                      "--k", "16384", "--fmt", "csv"])
        assert result.exit_code == 0
        assert result.output.splitlines()[0].startswith("side,n,x,")


class TestCompareAndAccuracy:
    def test_compare_rows(self, runner):
        result = runner.invoke(main, ["compare", "--method", "normal",
                                      "--k", "16384", "--fmt", "csv", "--table-z"])
        assert result.exit_code == 0
        lines = result.output.splitlines()
        assert len(lines) == 19  # header + 9 cases * 2 sides
        excluded = [ln for ln in lines[1:] if ln.endswith(("0", "1")) is False]
        assert any("bound <= 0" in ln for ln in lines)

    def test_accuracy_rows(self, runner):
        result = runner.invoke(main, ["accuracy", "--k", "16384", "--fmt", "csv"])
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 19


class TestExportCommand:
    def test_export_roundtrip(self, runner, tmp_path):
        out = tmp_path / "rows.csv"
        result = runner.invoke(main, ["export", "--n-values", "2,1:2",
                                      "--alphas", "0.05", "--k", "1024",
                                      "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        # n in {1, 2}: (2 + 3) x-values * 1 alpha * 3 methods
        assert len(lines) == 15
        assert out.with_name(out.name + ".manifest.json").exists()

    def test_empty_n_values_exits_2(self, runner, tmp_path):
        out = tmp_path / "rows.csv"
        result = runner.invoke(main, ["export", "--n-values", " ",
                                      "--out", str(out)])
        assert result.exit_code == 2
        assert not out.exists()

    def test_bad_range_exits_2(self, runner, tmp_path):
        result = runner.invoke(main, ["export", "--n-values", "5:1",
                                      "--out", str(tmp_path / "x.csv")])
        assert result.exit_code == 2
