"""Bulk interval export with a deterministic, diff-friendly layout.

Every (n, x in 0..n, alpha, method) combination becomes one record with
the fixed column order ``n,x,alpha,method,lower,upper,k,flags``.  Bounds
are fixed-point with 8 decimals (truncated toward zero), flags are
semicolon-joined tokens, and rows are sorted by n, x, alpha, then method
name, so identical export specs produce byte-identical files.  A manifest
sidecar records the grid size, precision mode and tool version.

Numeric-interval rows go through the two-pass streaming solver, so memory
stays flat no matter how many observations are exported.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import DomainError
from .intervals import (
    DEFAULT_K,
    METHOD_CLOPPER_PEARSON,
    METHOD_EXACT,
    METHOD_NORMAL,
    clopper_pearson,
    normal_interval,
)
from .likelihood import Observation
from .precision import precision_mode
from .quadrature import stream_crossings
from .special import normal_quantile
from .tables import truncate_decimal

__all__ = [
    "ExportSpec",
    "ExportRow",
    "EXPORT_COLUMNS",
    "EXPORT_FORMATS",
    "ALL_METHODS",
    "run_export",
    "compute_rows",
    "read_rows",
    "render_rows",
    "manifest_path_for",
]

EXPORT_COLUMNS = ("n", "x", "alpha", "method", "lower", "upper", "k", "flags")
EXPORT_FORMATS = ("csv", "json", "markdown")
ALL_METHODS = (METHOD_CLOPPER_PEARSON, METHOD_EXACT, METHOD_NORMAL)


@dataclass(frozen=True)
class ExportSpec:
    """What to export and where.

    ``normal_z_digits`` controls the normal-approximation multiplier: the
    default of 2 reproduces the published tables (z = 1.96 / 2.58 style
    values); None uses the accurate quantile instead.
    """

    n_values: tuple[int, ...]
    alphas: tuple[float, ...]
    out_path: Path
    k: int = DEFAULT_K
    methods: tuple[str, ...] = ALL_METHODS
    fmt: str = "csv"
    normal_z_digits: int | None = 2

    def __post_init__(self) -> None:
        if not self.n_values:
            raise DomainError("export requires at least one trial count")
        if not self.alphas:
            raise DomainError("export requires at least one alpha")
        if not self.methods:
            raise DomainError("export requires at least one method")
        for n in self.n_values:
            if not isinstance(n, int) or n < 1:
                raise DomainError(f"trial counts must be integers >= 1, got {n!r}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise DomainError(f"alpha must lie inside (0, 1), got {a!r}")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise DomainError(f"unknown method {m!r}; expected one of {ALL_METHODS}")
        if self.fmt not in EXPORT_FORMATS:
            raise DomainError(f"unknown format {self.fmt!r}; expected one of {EXPORT_FORMATS}")
        if self.k < 2 or self.k % 2:
            raise DomainError(f"k must be an even integer >= 2, got {self.k}")


@dataclass(frozen=True)
class ExportRow:
    """One exported record; value fields hold their exact display strings."""

    n: int
    x: int
    alpha: str
    method: str
    lower: str
    upper: str
    k: int
    flags: str

    def as_cells(self) -> list[str]:
        return [str(self.n), str(self.x), self.alpha, self.method,
                self.lower, self.upper, str(self.k), self.flags]


def _flags_token(flags: frozenset[str]) -> str:
    return ";".join(sorted(flags))


def _rows_for_observation(obs: Observation, alphas: tuple[float, ...],
                          methods: tuple[str, ...], k: int,
                          normal_z_digits: int | None) -> list[ExportRow]:
    h = 1.0 / k
    exact_bounds: dict[float, tuple[str, str]] = {}
    if METHOD_EXACT in methods:
        requests = []
        for alpha in alphas:
            requests.append(("lower", 0.5 * alpha))
            requests.append(("upper", 0.5 * alpha))
        indices, _total = stream_crossings(obs, k, requests)
        for i, alpha in enumerate(alphas):
            lo_idx, hi_idx = indices[2 * i], indices[2 * i + 1]
            exact_bounds[alpha] = (truncate_decimal(lo_idx * h, 8),
                                   truncate_decimal(hi_idx * h, 8))
    rows = []
    for alpha in alphas:
        for method in methods:
            if method == METHOD_EXACT:
                lo, hi = exact_bounds[alpha]
                flags = ""
            elif method == METHOD_NORMAL:
                z = None
                if normal_z_digits is not None:
                    z = round(normal_quantile(1.0 - 0.5 * alpha), normal_z_digits)
                iv = normal_interval(obs, alpha, z=z)
                lo, hi = truncate_decimal(iv.lower, 8), truncate_decimal(iv.upper, 8)
                flags = _flags_token(iv.flags)
            else:
                iv = clopper_pearson(obs, alpha)
                lo, hi = truncate_decimal(iv.lower, 8), truncate_decimal(iv.upper, 8)
                flags = _flags_token(iv.flags)
            rows.append(ExportRow(n=obs.n, x=obs.x, alpha=str(float(alpha)),
                                  method=method, lower=lo, upper=hi, k=k,
                                  flags=flags))
    return rows


def compute_rows(spec: ExportSpec, jobs: int = 1) -> list[ExportRow]:
    """Compute all export rows in deterministic order.

    Observations may be computed concurrently (``jobs`` > 1); rows are
    assembled in sorted order regardless of completion order.
    """
    n_values = sorted(set(spec.n_values))
    alphas = tuple(sorted(set(float(a) for a in spec.alphas)))
    methods = tuple(sorted(set(spec.methods)))
    observations = [Observation(n, x) for n in n_values for x in range(n + 1)]

    def work(obs: Observation) -> list[ExportRow]:
        return _rows_for_observation(obs, alphas, methods, spec.k,
                                     spec.normal_z_digits)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_obs = list(pool.map(work, observations))
    else:
        per_obs = [work(obs) for obs in observations]
    return [row for rows in per_obs for row in rows]


def render_rows(rows: list[ExportRow], fmt: str) -> str:
    """Serialize rows in the requested format (no trailing padding)."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow(row.as_cells())
        return buf.getvalue()
    if fmt == "json":
        payload = [dict(zip(EXPORT_COLUMNS, row.as_cells())) for row in rows]
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(EXPORT_COLUMNS) + " |",
                 "|" + "|".join(" --- " for _ in EXPORT_COLUMNS) + "|"]
        lines.extend("| " + " | ".join(row.as_cells()) + " |" for row in rows)
        return "\n".join(lines) + "\n"
    raise DomainError(f"unknown format {fmt!r}; expected one of {EXPORT_FORMATS}")


def read_rows(path: Path | str) -> list[ExportRow]:
    """Parse a CSV export back into rows (display strings kept verbatim)."""
    rows = []
    with open(path, newline="") as fh:
        for record in csv.reader(fh):
            if not record:
                continue
            if len(record) != len(EXPORT_COLUMNS):
                raise DomainError(
                    f"malformed export row (expected {len(EXPORT_COLUMNS)} fields): {record!r}")
            n_s, x_s, alpha, method, lower, upper, k_s, flags = record
            rows.append(ExportRow(n=int(n_s), x=int(x_s), alpha=alpha,
                                  method=method, lower=lower, upper=upper,
                                  k=int(k_s), flags=flags))
    return rows


def manifest_path_for(out_path: Path | str) -> Path:
    return Path(f"{out_path}.manifest.json")


def _manifest_text(spec: ExportSpec, row_count: int) -> str:
    from . import __version__

    manifest = {
        "columns": list(EXPORT_COLUMNS),
        "format": spec.fmt,
        "k": spec.k,
        "normal_z_digits": spec.normal_z_digits,
        "precision_mode": precision_mode().label,
        "row_count": row_count,
        "tool_version": __version__,
    }
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


def run_export(spec: ExportSpec, jobs: int = 1) -> tuple[Path, Path]:
    """Compute and atomically write the dataset plus its manifest.

    Data and manifest are staged as temporary files and moved into place
    only after both are complete, so failures never leave partial output.
    """
    rows = compute_rows(spec, jobs=jobs)
    out = Path(spec.out_path)
    manifest = manifest_path_for(out)
    tmp_out = out.with_name(out.name + ".tmp")
    tmp_manifest = manifest.with_name(manifest.name + ".tmp")
    try:
        tmp_out.write_text(render_rows(rows, spec.fmt))
        tmp_manifest.write_text(_manifest_text(spec, len(rows)))
        os.replace(tmp_out, out)
        os.replace(tmp_manifest, manifest)
    except BaseException:
        for tmp in (tmp_out, tmp_manifest):
            try:
                tmp.unlink(missing_ok=True)
            except OSError:
                pass
        raise
    return out, manifest
