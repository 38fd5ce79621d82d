"""Command-line surface.

Subcommands:

    interval   one interval query (any method, optional one-sided mode)
    table      reproduce one of the published comparison tables I-VIII
    compare    error percentages of an approximate method vs. the numeric interval
    accuracy   grid-doubling audit of the numeric interval
    export     bulk dataset export with manifest

Exit codes: 0 success, 2 usage/domain error, 3 resource limit, 4 I/O error.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import __version__
from .analysis import REFERENCE_CASES, accuracy_study, comparison_table
from .dataset import ALL_METHODS, ExportSpec, run_export
from .errors import DomainError, ResourceLimitError
from .intervals import (
    DEFAULT_K,
    METHOD_CLOPPER_PEARSON,
    METHOD_EXACT,
    METHOD_NORMAL,
    clopper_pearson,
    exact_interval,
    normal_interval,
    one_sided_interval,
)
from .likelihood import Observation
from .tables import TABLE_NAMES, build_table, render_table, truncate_decimal, two_decimal_z

EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_IO = 4

_METHOD_ALIASES = {
    "exact": METHOD_EXACT,
    METHOD_EXACT: METHOD_EXACT,
    METHOD_NORMAL: METHOD_NORMAL,
    METHOD_CLOPPER_PEARSON: METHOD_CLOPPER_PEARSON,
}


def _exit_codes(fn):
    """Map semantic exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        except ResourceLimitError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_RESOURCE)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_IO)

    return wrapper


@click.group()
@click.version_option(version=__version__, prog_name="laplace-ci")
def main() -> None:
    """Intervals for the add-one smoothed binomial estimator.

    The numeric method integrates the binomial likelihood with composite
    Simpson quadrature and never returns bounds touching 0 or 1; normal
    and Clopper-Pearson intervals are provided for comparison.
    """


def _interval_payload(iv, k: int | None) -> dict:
    payload = {
        "method": iv.method,
        "alpha": iv.alpha,
        "lower": truncate_decimal(iv.lower, 8),
        "upper": truncate_decimal(iv.upper, 8),
        "flags": sorted(iv.flags),
    }
    if k is not None:
        payload["k"] = k
    return payload


@main.command()
@click.option("--n", type=int, required=True, help="Number of trials.")
@click.option("--x", type=int, required=True, help="Number of successes.")
@click.option("--alpha", type=float, default=0.05, show_default=True,
              help="Two-sided miss probability (confidence = 1 - alpha).")
@click.option("--method", default="exact", show_default=True,
              type=click.Choice(sorted(set(_METHOD_ALIASES)), case_sensitive=False),
              help="Interval construction to use.")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True,
              help="Number of grid sub-intervals (even) for the numeric method.")
@click.option("--side", default="equal-tailed", show_default=True,
              type=click.Choice(["equal-tailed", "upper-bound", "lower-bound"]),
              help="One-sided mode for the numeric method.")
@click.option("--fmt", "--format", "fmt", default="human", show_default=True,
              type=click.Choice(["human", "json"]))
@_exit_codes
def interval(n: int, x: int, alpha: float, method: str, k: int, side: str, fmt: str) -> None:
    """Compute a single interval."""
    if x > n:
        raise DomainError("x must not exceed n")
    obs = Observation(n, x)
    method = _METHOD_ALIASES[method.lower()]
    if side != "equal-tailed" and method != METHOD_EXACT:
        raise DomainError("one-sided mode is only available for the exact-numeric method")
    if method == METHOD_EXACT:
        if side == "equal-tailed":
            iv = exact_interval(obs, alpha, k)
        else:
            iv = one_sided_interval(obs, alpha, side, k)
        k_used = k
    elif method == METHOD_NORMAL:
        iv = normal_interval(obs, alpha)
        k_used = None
    else:
        iv = clopper_pearson(obs, alpha)
        k_used = None
    if fmt == "json":
        click.echo(json.dumps(_interval_payload(iv, k_used), indent=2, sort_keys=True))
        return
    click.echo(f"lower {truncate_decimal(iv.lower, 8)}")
    click.echo(f"upper {truncate_decimal(iv.upper, 8)}")
    click.echo(f"flags {';'.join(sorted(iv.flags)) or '(none)'}")


@main.command()
@click.option("--paper-table", "name", required=True,
              type=click.Choice(TABLE_NAMES, case_sensitive=True),
              help="Which published table to reproduce (I-VIII).")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--fmt", "--format", "fmt", default="human", show_default=True,
              type=click.Choice(["human", "markdown", "csv", "json"]))
@_exit_codes
def table(name: str, k: int, fmt: str) -> None:
    """Reproduce a published comparison table."""
    click.echo(render_table(build_table(name, k), fmt), nl=False)


@main.command()
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--method", required=True,
              type=click.Choice([METHOD_NORMAL, METHOD_CLOPPER_PEARSON]))
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--table-z/--accurate-z", "table_z", default=False,
              help="Use the two-decimal z convention of the published tables "
                   "for the normal method instead of the accurate quantile.")
@click.option("--fmt", "--format", "fmt", default="human", show_default=True,
              type=click.Choice(["human", "markdown", "csv", "json"]))
@_exit_codes
def compare(alpha: float, method: str, k: int, table_z: bool, fmt: str) -> None:
    """Error percentages of an approximate method vs. the numeric interval."""
    normal_z = two_decimal_z(alpha) if (table_z and method == METHOD_NORMAL) else None
    rows = comparison_table(REFERENCE_CASES, alpha, method, k, normal_z=normal_z)
    out = {
        "title": f"Error percentage vs. numeric interval ({method}, alpha={alpha:g})",
        "columns": ["side", "n", "x", "numeric", "approximation",
                    "error_percent", "excluded"],
        "rows": [[r.side, str(r.obs.n), str(r.obs.x),
                  truncate_decimal(r.exact, 8),
                  truncate_decimal(r.approx, 8),
                  "" if r.error_percent is None else truncate_decimal(r.error_percent, 3),
                  r.exclusion_reason or ""] for r in rows],
    }
    click.echo(render_table(out, fmt), nl=False)


@main.command()
@click.option("--alpha", type=float, default=0.05, show_default=True)
@click.option("--k", type=int, default=DEFAULT_K, show_default=True,
              help="Coarse grid size; the audit reruns at 2k.")
@click.option("--fmt", "--format", "fmt", default="human", show_default=True,
              type=click.Choice(["human", "markdown", "csv", "json"]))
@_exit_codes
def accuracy(alpha: float, k: int, fmt: str) -> None:
    """Grid-doubling audit of the numeric interval."""
    rows = accuracy_study(REFERENCE_CASES, alpha, k)
    out = {
        "title": f"Grid-doubling audit (alpha={alpha:g}, k={k} vs {2 * k})",
        "columns": ["side", "n", "x", "value_k", "value_2k", "first_differing_decimal"],
        "rows": [[r.side, str(r.obs.n), str(r.obs.x),
                  truncate_decimal(r.value_k, 8), truncate_decimal(r.value_2k, 8),
                  "" if r.first_differing_decimal is None else str(r.first_differing_decimal)]
                 for r in rows],
    }
    click.echo(render_table(out, fmt), nl=False)


def _parse_int_list(raw: str, what: str) -> tuple[int, ...]:
    values: list[int] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            lo_s, _, hi_s = part.partition(":")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise DomainError(f"invalid {what} range {part!r}") from None
            if hi < lo:
                raise DomainError(f"empty {what} range {part!r}")
            values.extend(range(lo, hi + 1))
        else:
            try:
                values.append(int(part))
            except ValueError:
                raise DomainError(f"invalid {what} value {part!r}") from None
    return tuple(values)


def _parse_float_list(raw: str, what: str) -> tuple[float, ...]:
    values: list[float] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            raise DomainError(f"invalid {what} value {part!r}") from None
    return tuple(values)


@main.command()
@click.option("--n-values", required=True,
              help="Trial counts: comma list and lo:hi ranges, e.g. '5,1000' or '1:10'.")
@click.option("--alphas", default="0.05,0.01", show_default=True,
              help="Comma-separated two-sided miss probabilities.")
@click.option("--methods", default=",".join(ALL_METHODS), show_default=True,
              help="Comma-separated subset of: " + ", ".join(ALL_METHODS)
                   + " ('exact' is accepted for exact-numeric).")
@click.option("--k", type=int, default=DEFAULT_K, show_default=True)
@click.option("--fmt", "--format", "fmt", default="csv", show_default=True,
              type=click.Choice(["csv", "json", "markdown"]))
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True,
                                                      path_type=Path))
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Concurrent observations; output order is deterministic regardless.")
@click.option("--accurate-normal-z", is_flag=True,
              help="Use the accurate normal quantile for normal rows instead of "
                   "the two-decimal table convention.")
@_exit_codes
def export(n_values: str, alphas: str, methods: str, k: int, fmt: str,
           out: Path, jobs: int, accurate_normal_z: bool) -> None:
    """Export intervals for every (n, x, alpha, method) combination."""
    method_list = tuple(_METHOD_ALIASES.get(m.strip().lower(), m.strip())
                        for m in methods.split(",") if m.strip())
    spec = ExportSpec(n_values=_parse_int_list(n_values, "n"),
                      alphas=_parse_float_list(alphas, "alpha"),
                      out_path=out, k=k, methods=method_list, fmt=fmt,
                      normal_z_digits=None if accurate_normal_z else 2)
    data_path, manifest_path = run_export(spec, jobs=max(1, jobs))
    click.echo(f"wrote {data_path} and {manifest_path}")


if __name__ == "__main__":
    main()
