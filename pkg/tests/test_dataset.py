"""Export rows, formats, manifest, determinism, and the round-trip contract."""

import json
from pathlib import Path

import pytest

from laplace_ci import (
    DomainError,
    ExportSpec,
    Observation,
    compute_rows,
    read_rows,
    run_export,
)
from laplace_ci.dataset import manifest_path_for, render_rows

import reference_tables

K20 = 1 << 20


class TestExportSpec:
    def test_validation(self):
        with pytest.raises(DomainError):
            ExportSpec(n_values=(), alphas=(0.05,), out_path=Path("x.csv"))
        with pytest.raises(DomainError):
            ExportSpec(n_values=(5,), alphas=(), out_path=Path("x.csv"))
        with pytest.raises(DomainError):
            ExportSpec(n_values=(5,), alphas=(0.05,), out_path=Path("x.csv"), k=7)
        with pytest.raises(DomainError):
            ExportSpec(n_values=(5,), alphas=(0.05,), out_path=Path("x.csv"),
                       methods=("wilson",))
        with pytest.raises(DomainError):
            ExportSpec(n_values=(5,), alphas=(0.05,), out_path=Path("x.csv"),
                       fmt="xml")

    def test_empty_spec_never_touches_disk(self, tmp_path):
        out = tmp_path / "data.csv"
        with pytest.raises(DomainError):
            run_export(ExportSpec(n_values=(), alphas=(0.05,), out_path=out))
        assert not out.exists()
        assert not manifest_path_for(out).exists()


class TestComputeRows:
    def test_published_first_row(self):
        spec = ExportSpec(n_values=(5,), alphas=(0.05,), out_path=Path("unused.csv"),
                          methods=("exact-numeric",))
        rows = compute_rows(spec)
        assert len(rows) == 6
        cells = ",".join(rows[0].as_cells())
        assert cells == "5,0,0.05,exact-numeric,0.00421047,0.45925807,1048576,"

    def test_single_trial_bounds_match_closed_form(self):
        spec = ExportSpec(n_values=(1,), alphas=(0.05,), out_path=Path("unused.csv"),
                          methods=("exact-numeric",))
        rows = compute_rows(spec)
        row = rows[0]
        # Beta(1, 2) quantiles: 1 - sqrt(0.975) and 1 - sqrt(0.025)
        assert float(row.lower) == pytest.approx(0.01257912, abs=2.0 / K20 + 1e-8)
        assert float(row.upper) == pytest.approx(0.84188612, abs=2.0 / K20 + 1e-8)

    def test_row_ordering_and_flags(self):
        spec = ExportSpec(n_values=(2,), alphas=(0.05, 0.01), out_path=Path("unused.csv"),
                          k=1 << 10)
        rows = compute_rows(spec)
        # n asc, x asc, alpha asc, method name asc
        key = [(r.n, r.x, float(r.alpha), r.method) for r in rows]
        assert key == sorted(key)
        cp_first = rows[0]
        assert cp_first.method == "clopper-pearson"
        assert cp_first.flags == "lower-degenerate-zero"
        normal_zero = next(r for r in rows if r.method == "normal" and r.x == 0)
        assert normal_zero.lower == "0.00000000" and normal_zero.flags == ""

    def test_jobs_do_not_change_output(self):
        spec = ExportSpec(n_values=(3, 2), alphas=(0.05,), out_path=Path("unused.csv"),
                          k=1 << 10)
        assert compute_rows(spec, jobs=1) == compute_rows(spec, jobs=3)


class TestRunExport:
    def test_deterministic_bytes_and_roundtrip(self, tmp_path):
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out_a, out_b):
            spec = ExportSpec(n_values=(5,), alphas=(0.05, 0.01), out_path=out,
                              k=1 << 12)
            run_export(spec)
        assert out_a.read_bytes() == out_b.read_bytes()
        assert manifest_path_for(out_a).read_bytes() == manifest_path_for(out_b).read_bytes()
        rows = read_rows(out_a)
        assert render_rows(rows, "csv").encode() == out_a.read_bytes()

    def test_manifest_contents(self, tmp_path):
        out = tmp_path / "d.csv"
        spec = ExportSpec(n_values=(2,), alphas=(0.1,), out_path=out, k=1 << 10)
        run_export(spec)
        manifest = json.loads(manifest_path_for(out).read_text())
        assert manifest["k"] == 1 << 10
        assert manifest["precision_mode"] == "native"
        assert manifest["row_count"] == 9  # 3 x-values * 1 alpha * 3 methods
        assert manifest["columns"][0] == "n" and manifest["columns"][-1] == "flags"
        assert "tool_version" in manifest

    def test_json_and_markdown_formats(self, tmp_path):
        out = tmp_path / "d.json"
        spec = ExportSpec(n_values=(2,), alphas=(0.05,), out_path=out, k=1 << 10,
                          fmt="json", methods=("normal",))
        run_export(spec)
        payload = json.loads(out.read_text())
        assert [r["x"] for r in payload] == ["0", "1", "2"]
        out_md = tmp_path / "d.md"
        run_export(ExportSpec(n_values=(2,), alphas=(0.05,), out_path=out_md,
                              k=1 << 10, fmt="markdown", methods=("normal",)))
        assert out_md.read_text().startswith("| n | x | alpha |")

    def test_malformed_csv_rejected(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,2,3\n")
        with pytest.raises(DomainError):
            read_rows(bad)


class TestExportCompleteness:
    def test_contains_every_published_limit_entry(self, tmp_path):
        """n in {5, 1000}, both alphas, all methods covers both limit tables."""
        out = tmp_path / "full.csv"
        spec = ExportSpec(n_values=(5, 1000), alphas=(0.05, 0.01), out_path=out)
        run_export(spec)
        by_key = {}
        for row in read_rows(out):
            lo5 = row.lower[:row.lower.index(".") + 6]
            hi5 = row.upper[:row.upper.index(".") + 6]
            by_key[(row.n, row.x, row.alpha, row.method)] = (lo5, hi5)
        for alpha, table in (("0.05", reference_tables.TABLE_I),
                             ("0.01", reference_tables.TABLE_IV)):
            for (n, x), cells in table.items():
                num = by_key[(n, x, alpha, "exact-numeric")]
                assert num == (cells[0], cells[1]), (n, x, alpha)
                cp = by_key[(n, x, alpha, "clopper-pearson")]
                for got, printed in zip(cp, cells[4:6]):
                    assert abs(float(got) - float(printed)) <= 2e-5, (n, x, alpha)
                nor = by_key[(n, x, alpha, "normal")]
                for got, printed in zip(nor, cells[2:4]):
                    assert abs(float(got) - float(printed)) <= 2e-5, (n, x, alpha)
