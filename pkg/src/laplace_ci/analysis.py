"""Comparison machinery: error percentages and the grid-doubling audit.

The numeric interval at the configured k serves as the reference value;
approximate methods are scored as signed percentage deviations from it.
Bounds that leave [0, 1] or sit on a degenerate boundary are excluded
from scoring (they have no meaningful relative error).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .intervals import (
    DEFAULT_K,
    FLAG_LOWER_DEGENERATE_ZERO,
    FLAG_UPPER_DEGENERATE_ONE,
    METHOD_CLOPPER_PEARSON,
    METHOD_NORMAL,
    Interval,
    clopper_pearson,
    exact_interval,
    grid_for,
    normal_interval,
)
from .likelihood import Observation

__all__ = [
    "ComparisonRow",
    "AccuracyRow",
    "error_percentage",
    "comparison_table",
    "accuracy_study",
    "first_differing_decimal",
    "REFERENCE_CASES",
]

# The benchmark case list used throughout the published comparison tables:
# a small and a large trial count so approximation error is visible.
REFERENCE_CASES: tuple[Observation, ...] = tuple(
    [Observation(5, x) for x in range(6)]
    + [Observation(1000, 0), Observation(1000, 500), Observation(1000, 1000)]
)


def error_percentage(exact: float, approx: float) -> float:
    """Signed percentage deviation of ``approx`` from ``exact``."""
    if exact == 0.0:
        raise DomainError("error percentage undefined for exact value 0")
    return (approx - exact) / exact * 100.0


@dataclass(frozen=True)
class ComparisonRow:
    """One scored bound: numeric reference vs. an approximate method."""

    obs: Observation
    alpha: float
    side: str                  # "lower" or "upper"
    exact: float
    approx: float
    method: str
    error_percent: float | None
    excluded: bool
    exclusion_reason: str | None = None


def _approx_interval(obs: Observation, alpha: float, method: str,
                     normal_z: float | None) -> Interval:
    if method == METHOD_NORMAL:
        return normal_interval(obs, alpha, z=normal_z)
    if method == METHOD_CLOPPER_PEARSON:
        return clopper_pearson(obs, alpha)
    raise DomainError(f"unknown comparison method {method!r}")


def _exclusion(side: str, value: float, flags: frozenset[str]) -> str | None:
    if side == "lower" and FLAG_LOWER_DEGENERATE_ZERO in flags:
        return "degenerate boundary at 0"
    if side == "upper" and FLAG_UPPER_DEGENERATE_ONE in flags:
        return "degenerate boundary at 1"
    if value <= 0.0:
        return "bound <= 0"
    if value >= 1.0:
        return "bound >= 1"
    return None


def comparison_table(cases: list[Observation] | tuple[Observation, ...],
                     alpha: float, method: str, k: int = DEFAULT_K,
                     normal_z: float | None = None) -> list[ComparisonRow]:
    """Score one approximate method against the numeric interval.

    Returns one row per (case, side), lower sides first, in case order.
    Excluded rows are kept (flagged) so renderers can show the exclusion
    rule at work; error percentages come from full-precision bounds, not
    their truncated displays.
    """
    exact = {}
    approx = {}
    for obs in cases:
        exact[obs] = exact_interval(obs, alpha, k)
        approx[obs] = _approx_interval(obs, alpha, method, normal_z)
    rows = []
    for side in ("lower", "upper"):
        for obs in cases:
            e = getattr(exact[obs], side)
            a = getattr(approx[obs], side)
            reason = _exclusion(side, a, approx[obs].flags)
            rows.append(ComparisonRow(
                obs=obs, alpha=alpha, side=side, exact=e, approx=a,
                method=method,
                error_percent=None if reason else error_percentage(e, a),
                excluded=reason is not None, exclusion_reason=reason))
    return rows


@dataclass(frozen=True)
class AccuracyRow:
    """Bound values at k and 2k plus where their decimals first disagree."""

    obs: Observation
    alpha: float
    side: str
    value_k: float
    value_2k: float
    first_differing_decimal: int | None


def first_differing_decimal(a: float, b: float, places: int = 8) -> int | None:
    """1-based position of the first differing decimal, examined to ``places``.

    Both values are truncated (not rounded) to ``places`` decimals first;
    None means every examined digit agrees.
    """
    from .tables import truncate_decimal

    da = truncate_decimal(a, places).split(".")[1]
    db = truncate_decimal(b, places).split(".")[1]
    for i, (ca, cb) in enumerate(zip(da, db), start=1):
        if ca != cb:
            return i
    return None


def accuracy_study(cases: list[Observation] | tuple[Observation, ...],
                   alpha: float, k: int = DEFAULT_K) -> list[AccuracyRow]:
    """Grid-doubling audit: rerun each bound at 2k and compare decimals."""
    rows = []
    for obs in cases:
        iv_k = exact_interval(obs, alpha, k, grid=grid_for(obs, k))
        iv_2k = exact_interval(obs, alpha, 2 * k, grid=grid_for(obs, 2 * k))
        for side in ("lower", "upper"):
            vk = getattr(iv_k, side)
            v2k = getattr(iv_2k, side)
            rows.append(AccuracyRow(
                obs=obs, alpha=alpha, side=side, value_k=vk, value_2k=v2k,
                first_differing_decimal=first_differing_decimal(vk, v2k)))
    return rows
