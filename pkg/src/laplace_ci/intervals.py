"""Interval methods for the binomial success probability.

Three two-sided constructions are provided:

* ``exact_interval`` — the equal-tailed interval of the normalized
  likelihood (the Beta posterior under a flat prior), located by numeric
  integration; its bounds are always strictly inside (0, 1).
* ``normal_interval`` — the textbook normal approximation, reported raw
  (bounds may leave [0, 1]; flags say when they do).
* ``clopper_pearson`` — the classical exact frequentist interval via
  Beta quantiles, with the usual degenerate tails at x=0 and x=n.

``one_sided_interval`` puts the whole miss probability in a single tail,
and ``applicability`` evaluates the standard checklist for trusting the
normal approximation.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from dataclasses import dataclass

from .errors import DomainError
from .likelihood import Observation
from .precision import precision_mode
from .quadrature import PrefixMassGrid, build_grid, lower_crossing, upper_crossing
from .special import f_quantile, normal_quantile, reg_inc_beta_inv

__all__ = [
    "Interval",
    "ConditionReport",
    "Condition",
    "DEFAULT_K",
    "METHOD_EXACT",
    "METHOD_NORMAL",
    "METHOD_CLOPPER_PEARSON",
    "FLAG_LOWER_OUT_OF_RANGE",
    "FLAG_UPPER_OUT_OF_RANGE",
    "FLAG_LOWER_DEGENERATE_ZERO",
    "FLAG_UPPER_DEGENERATE_ONE",
    "exact_interval",
    "one_sided_interval",
    "normal_interval",
    "clopper_pearson",
    "clopper_pearson_f_form",
    "applicability",
    "grid_for",
    "clear_grid_cache",
]

DEFAULT_K = 1 << 20

METHOD_EXACT = "exact-numeric"
METHOD_NORMAL = "normal"
METHOD_CLOPPER_PEARSON = "clopper-pearson"

FLAG_LOWER_OUT_OF_RANGE = "lower-out-of-range"
FLAG_UPPER_OUT_OF_RANGE = "upper-out-of-range"
FLAG_LOWER_DEGENERATE_ZERO = "lower-degenerate-zero"
FLAG_UPPER_DEGENERATE_ONE = "upper-degenerate-one"


@dataclass(frozen=True)
class Interval:
    """A lower/upper probability pair tagged with method, alpha and flags."""

    lower: float
    upper: float
    method: str
    alpha: float
    flags: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise DomainError(f"interval bounds out of order: {self.lower!r} > {self.upper!r}")


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly inside (0, 1), got {alpha!r}")
    return alpha


# Grid cache: keyed by (n, x, k, backend); last writer wins on identical
# keys, lookups are lock-protected so concurrent callers are safe.
_GRID_CACHE: OrderedDict[tuple, PrefixMassGrid] = OrderedDict()
_GRID_CACHE_MAX = 4
_GRID_LOCK = threading.Lock()


def grid_for(obs: Observation, k: int) -> PrefixMassGrid:
    """Build (or reuse) the prefix-mass grid for an observation."""
    key = (obs.n, obs.x, k, precision_mode().label)
    with _GRID_LOCK:
        grid = _GRID_CACHE.get(key)
        if grid is not None:
            _GRID_CACHE.move_to_end(key)
            return grid
    grid = build_grid(obs, k)
    with _GRID_LOCK:
        _GRID_CACHE[key] = grid
        _GRID_CACHE.move_to_end(key)
        while len(_GRID_CACHE) > _GRID_CACHE_MAX:
            _GRID_CACHE.popitem(last=False)
    return grid


def clear_grid_cache() -> None:
    with _GRID_LOCK:
        _GRID_CACHE.clear()


def _tail_target(grid: PrefixMassGrid, fraction: float):
    if grid._hp is not None:
        import mpmath

        return grid._hp["total"] * mpmath.mpf(fraction)
    return fraction * grid.total


def exact_interval(obs: Observation, alpha: float, k: int = DEFAULT_K,
                   grid: PrefixMassGrid | None = None) -> Interval:
    """Equal-tailed interval of the normalized likelihood, mass alpha/2 per tail.

    Bounds land on grid nodes and are strictly inside (0, 1); no flags are
    ever set for this method.
    """
    alpha = _check_alpha(alpha)
    if grid is None:
        grid = grid_for(obs, k)
    target = _tail_target(grid, 0.5 * alpha)
    lo = lower_crossing(grid, target)
    hi = upper_crossing(grid, target)
    return Interval(lower=lo * grid.h, upper=hi * grid.h,
                    method=METHOD_EXACT, alpha=alpha)


def one_sided_interval(obs: Observation, alpha: float, side: str,
                       k: int = DEFAULT_K,
                       grid: PrefixMassGrid | None = None) -> Interval:
    """One-sided interval with the whole mass alpha in a single tail.

    ``side="upper-bound"`` returns [0, c] with c covering mass 1 - alpha
    from the left; ``side="lower-bound"`` mirrors it as [c, 1].  The pinned
    boundary is marked with the matching degenerate flag.
    """
    alpha = _check_alpha(alpha)
    if side not in ("upper-bound", "lower-bound"):
        raise DomainError(f"side must be 'upper-bound' or 'lower-bound', got {side!r}")
    if grid is None:
        grid = grid_for(obs, k)
    target = _tail_target(grid, alpha)
    if side == "upper-bound":
        hi = upper_crossing(grid, target)
        return Interval(lower=0.0, upper=hi * grid.h, method=METHOD_EXACT,
                        alpha=alpha, flags=frozenset({FLAG_LOWER_DEGENERATE_ZERO}))
    lo = lower_crossing(grid, target)
    return Interval(lower=lo * grid.h, upper=1.0, method=METHOD_EXACT,
                    alpha=alpha, flags=frozenset({FLAG_UPPER_DEGENERATE_ONE}))


def normal_interval(obs: Observation, alpha: float, z: float | None = None,
                    clamp: bool = False) -> Interval:
    """Normal-approximation interval p_hat +/- z * sqrt(p_hat(1-p_hat)/n).

    Bounds are reported raw so out-of-range values are visible (and
    flagged); pass ``clamp=True`` to clip them to [0, 1] afterwards.
    ``z`` overrides the accurate quantile, e.g. with the two-decimal
    table values used in hand calculations.
    """
    alpha = _check_alpha(alpha)
    if z is None:
        z = normal_quantile(1.0 - 0.5 * alpha)
    p_hat = obs.x / obs.n
    half_width = z * math.sqrt(p_hat * (1.0 - p_hat) / obs.n)
    lower, upper = p_hat - half_width, p_hat + half_width
    flags = set()
    if lower < 0.0:
        flags.add(FLAG_LOWER_OUT_OF_RANGE)
    if upper > 1.0:
        flags.add(FLAG_UPPER_OUT_OF_RANGE)
    if clamp:
        lower, upper = max(lower, 0.0), min(upper, 1.0)
    return Interval(lower=lower, upper=upper, method=METHOD_NORMAL,
                    alpha=alpha, flags=frozenset(flags))


def clopper_pearson(obs: Observation, alpha: float) -> Interval:
    """Classical exact interval via equal-tailed Beta quantiles.

    lower = BetaInv(alpha/2; x, n-x+1), upper = BetaInv(1-alpha/2; x+1, n-x),
    with the conventional degenerate tails: lower = 0 at x = 0 and
    upper = 1 at x = n (flagged).
    """
    alpha = _check_alpha(alpha)
    n, x = obs.n, obs.x
    flags = set()
    if x == 0:
        lower = 0.0
        flags.add(FLAG_LOWER_DEGENERATE_ZERO)
    else:
        lower = reg_inc_beta_inv(x, n - x + 1, 0.5 * alpha)
    if x == n:
        upper = 1.0
        flags.add(FLAG_UPPER_DEGENERATE_ONE)
    else:
        upper = reg_inc_beta_inv(x + 1, n - x, 1.0 - 0.5 * alpha)
    return Interval(lower=lower, upper=upper, method=METHOD_CLOPPER_PEARSON,
                    alpha=alpha, flags=frozenset(flags))


def clopper_pearson_f_form(obs: Observation, alpha: float) -> Interval:
    """Same interval through F-distribution quantiles.

    With v1 = 2(n-x+1), v2 = 2x, v3 = 2(x+1), v4 = 2(n-x) and F the
    (1-alpha/2) quantile:

        lower = v2 / (v2 + v1 * F(v1, v2)),
        upper = v3 * F(v3, v4) / (v4 + v3 * F(v3, v4)).

    Kept as an independent route for consistency checks against the
    Beta-quantile form.
    """
    alpha = _check_alpha(alpha)
    n, x = obs.n, obs.x
    q = 1.0 - 0.5 * alpha
    flags = set()
    if x == 0:
        lower = 0.0
        flags.add(FLAG_LOWER_DEGENERATE_ZERO)
    else:
        v1, v2 = 2 * (n - x + 1), 2 * x
        f = f_quantile(q, v1, v2)
        lower = v2 / (v2 + v1 * f)
    if x == n:
        upper = 1.0
        flags.add(FLAG_UPPER_DEGENERATE_ONE)
    else:
        v3, v4 = 2 * (x + 1), 2 * (n - x)
        f = f_quantile(q, v3, v4)
        upper = v3 * f / (v4 + v3 * f)
    return Interval(lower=lower, upper=upper, method=METHOD_CLOPPER_PEARSON,
                    alpha=alpha, flags=frozenset(flags))


@dataclass(frozen=True)
class Condition:
    """One applicability condition with its outcome.

    ``heuristic`` marks conditions stated in terms of the unknown true
    probability, which are necessarily evaluated at the point estimate.
    """

    number: int
    description: str
    holds: bool
    heuristic: bool


@dataclass(frozen=True)
class ConditionReport:
    """Outcomes of the six normal-approximation applicability conditions."""

    obs: Observation
    threshold: int
    conditions: tuple[Condition, ...]

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.conditions)


# Operationalized constants for the qualitative conditions: "n quite
# large" and "unless p is very small" carry no thresholds of their own.
LARGE_N = 30
VERY_SMALL_P = 0.01


def applicability(obs: Observation, threshold: int = 5) -> ConditionReport:
    """Evaluate the six standard conditions for the normal approximation.

    ``threshold`` is the conventional count floor (5 or 10).  Conditions
    about the unknown p are evaluated at p_hat = x/n and marked heuristic.
    """
    if threshold not in (5, 10):
        raise DomainError(f"threshold must be 5 or 10, got {threshold!r}")
    n, x = obs.n, obs.x
    t = float(threshold)
    p_hat = x / n
    sigma_hat = math.sqrt(p_hat * (1.0 - p_hat) / n)
    band_lo, band_hi = p_hat - 3.0 * sigma_hat, p_hat + 3.0 * sigma_hat
    conditions = (
        Condition(1, f"n*p >= {threshold} and n*(1-p) >= {threshold}",
                  n * p_hat >= t and n * (1.0 - p_hat) >= t, True),
        Condition(2, f"n*p*(1-p) >= {threshold}",
                  n * p_hat * (1.0 - p_hat) >= t, True),
        Condition(3, f"n*p_hat >= {threshold} and n*(1-p_hat) >= {threshold}",
                  n * p_hat >= t and n * (1.0 - p_hat) >= t, False),
        Condition(4, "p_hat +/- 3*sigma_hat stays inside (0, 1)",
                  band_lo > 0.0 and band_hi < 1.0, False),
        Condition(5, f"n quite large (n >= {LARGE_N})", n >= LARGE_N, False),
        Condition(6, f"n >= 50 unless p is very small (p_hat < {VERY_SMALL_P})",
                  n >= 50 or p_hat < VERY_SMALL_P, True),
    )
    return ConditionReport(obs=obs, threshold=threshold, conditions=conditions)
