"""Reproduction of the published comparison tables (I through VIII).

Display conventions follow the source tables: limit values are truncated
(not rounded) toward zero, to 5 decimals in the side-by-side tables and
8 decimals in the grid-doubling tables; error percentages are computed on
full-precision values and truncated to 3 decimals.  The normal-approximation
columns use the two-decimal z multipliers of hand calculations (1.96 for
95%, 2.58 for 99%); every other column is full precision.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .analysis import REFERENCE_CASES, accuracy_study, comparison_table
from .errors import DomainError
from .intervals import (
    DEFAULT_K,
    METHOD_CLOPPER_PEARSON,
    METHOD_NORMAL,
    clopper_pearson,
    exact_interval,
    normal_interval,
    normal_quantile,
)

__all__ = [
    "TABLE_NAMES",
    "truncate_decimal",
    "two_decimal_z",
    "build_table",
    "render_table",
]

TABLE_NAMES = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII")

_ALPHA_95 = 0.05
_ALPHA_99 = 0.01


def truncate_decimal(value: float, places: int) -> str:
    """Fixed-point display truncated toward zero at ``places`` decimals."""
    # Format well past the target so the cut sees exact decimals of the
    # binary value, then drop everything after the wanted digit.
    s = f"{value:.{places + 12}f}"
    dot = s.index(".")
    return s[:dot + 1 + places]


def two_decimal_z(alpha: float) -> float:
    """The conventional two-decimal normal multiplier for a two-sided level."""
    return round(normal_quantile(1.0 - 0.5 * alpha), 2)


def _limits_table(alpha: float, k: int) -> dict:
    z = two_decimal_z(alpha)
    rows = []
    for obs in REFERENCE_CASES:
        num = exact_interval(obs, alpha, k)
        nor = normal_interval(obs, alpha, z=z)
        cp = clopper_pearson(obs, alpha)
        rows.append([
            str(obs.n), str(obs.x),
            truncate_decimal(num.lower, 5), truncate_decimal(num.upper, 5),
            truncate_decimal(nor.lower, 5), truncate_decimal(nor.upper, 5),
            truncate_decimal(cp.lower, 5), truncate_decimal(cp.upper, 5),
        ])
    level = f"{100 * (1 - alpha):g}%"
    return {
        "title": f"Lower and upper limit values of the {level} confidence interval",
        "columns": ["n", "x", "numeric_lower", "numeric_upper",
                    "normal_lower", "normal_upper",
                    "clopper_pearson_lower", "clopper_pearson_upper"],
        "rows": rows,
    }


def _error_table(alpha: float, method: str, k: int) -> dict:
    normal_z = two_decimal_z(alpha) if method == METHOD_NORMAL else None
    all_rows = comparison_table(REFERENCE_CASES, alpha, method, k, normal_z=normal_z)
    rows = []
    for row in all_rows:
        if row.excluded:
            continue
        rows.append([
            row.side, str(row.obs.n), str(row.obs.x),
            truncate_decimal(row.exact, 5),
            truncate_decimal(row.approx, 5),
            truncate_decimal(row.error_percent, 3),
        ])
    level = f"{100 * (1 - alpha):g}%"
    label = "normal approximation" if method == METHOD_NORMAL else "Clopper-Pearson"
    return {
        "title": f"Error percentage of the {level} confidence interval ({label})",
        "columns": ["side", "n", "x", "numeric", "approximation", "error_percent"],
        "rows": rows,
    }


def _accuracy_table(alpha: float, k: int) -> dict:
    rows_by_case: dict = {}
    for row in accuracy_study(REFERENCE_CASES, alpha, k):
        cells = rows_by_case.setdefault(row.obs, {})
        cells[row.side] = (truncate_decimal(row.value_k, 8),
                           truncate_decimal(row.value_2k, 8))
    rows = []
    for obs in REFERENCE_CASES:
        lo = rows_by_case[obs]["lower"]
        hi = rows_by_case[obs]["upper"]
        rows.append([str(obs.n), str(obs.x), lo[0], lo[1], hi[0], hi[1]])
    level = f"{100 * (1 - alpha):g}%"
    log2k = round(math.log2(k))
    k_label = f"k=2^{log2k}" if 2 ** log2k == k else f"k={k}"
    k2_label = f"k=2^{log2k + 1}" if 2 ** log2k == k else f"k={2 * k}"
    return {
        "title": f"Accuracy of the {level} confidence interval by numerical integral",
        "columns": ["n", "x", f"lower_{k_label}", f"lower_{k2_label}",
                    f"upper_{k_label}", f"upper_{k2_label}"],
        "rows": rows,
    }


def build_table(name: str, k: int = DEFAULT_K) -> dict:
    """Build the named table as {title, columns, rows-of-strings}."""
    builders = {
        "I": lambda: _limits_table(_ALPHA_95, k),
        "II": lambda: _error_table(_ALPHA_95, METHOD_NORMAL, k),
        "III": lambda: _error_table(_ALPHA_95, METHOD_CLOPPER_PEARSON, k),
        "IV": lambda: _limits_table(_ALPHA_99, k),
        "V": lambda: _error_table(_ALPHA_99, METHOD_NORMAL, k),
        "VI": lambda: _error_table(_ALPHA_99, METHOD_CLOPPER_PEARSON, k),
        "VII": lambda: _accuracy_table(_ALPHA_95, k),
        "VIII": lambda: _accuracy_table(_ALPHA_99, k),
    }
    try:
        builder = builders[name]
    except KeyError:
        raise DomainError(
            f"unknown table {name!r}; expected one of {', '.join(TABLE_NAMES)}") from None
    return builder()


def render_table(table: dict, fmt: str = "human") -> str:
    """Render a built table as human, markdown, csv or json text."""
    columns, rows = table["columns"], table["rows"]
    if fmt == "human":
        widths = [max(len(c), *(len(r[i]) for r in rows)) if rows else len(c)
                  for i, c in enumerate(columns)]
        lines = [table["title"],
                 "  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
        lines.extend("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
                     for row in rows)
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(columns) + " |",
                 "|" + "|".join(" --- " for _ in columns) + "|"]
        lines.extend("| " + " | ".join(row) + " |" for row in rows)
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(table, indent=2, sort_keys=True) + "\n"
    raise DomainError(f"unknown format {fmt!r}; expected human, markdown, csv or json")
