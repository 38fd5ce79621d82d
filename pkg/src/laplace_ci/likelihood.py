"""Binomial likelihood and the point estimators it supports.

The likelihood of a success probability p after observing x successes in
n trials is L(p; n, x) = C(n, x) p^x (1-p)^(n-x).  Everything here is
evaluated in the log domain so that large n stays finite, with the usual
0*log(0) = 0 convention at the boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import ln_choose

__all__ = [
    "Observation",
    "log_likelihood",
    "mle_estimate",
    "laplace_estimate",
    "analytic_total_mass",
]


@dataclass(frozen=True)
class Observation:
    """A trial record: ``n`` trials with ``x`` successes."""

    n: int
    x: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not isinstance(self.x, int):
            raise DomainError(f"trial counts must be integers, got n={self.n!r}, x={self.x!r}")
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.x <= self.n:
            raise DomainError(f"x must satisfy 0 <= x <= n, got n={self.n}, x={self.x}")


def log_likelihood(obs: Observation, p):
    """Log of L(p; n, x) for scalar or array-valued p in [0, 1].

    Boundary conventions: a zero exponent silences its boundary factor, so
    log_likelihood(Observation(n, 0), 0.0) == 0.0 and symmetrically at p=1.
    """
    n, x = obs.n, obs.x
    arr = np.asarray(p, dtype=np.float64)
    if np.any((arr < 0.0) | (arr > 1.0)):
        raise DomainError("p must lie in [0, 1]")
    lnc = ln_choose(n, x)
    with np.errstate(divide="ignore", invalid="ignore"):
        left = 0.0 if x == 0 else x * np.log(arr)
        right = 0.0 if x == n else (n - x) * np.log1p(-arr)
    out = lnc + left + right
    if np.isscalar(p) or np.ndim(p) == 0:
        return float(out)
    return out


def mle_estimate(obs: Observation) -> float:
    """Maximum-likelihood point estimate x/n."""
    return obs.x / obs.n


def laplace_estimate(obs: Observation) -> float:
    """Add-one smoothed estimate (x+1)/(n+2), always strictly inside (0, 1)."""
    return (obs.x + 1) / (obs.n + 2)


def analytic_total_mass(n: int) -> float:
    """Exact value of the likelihood's total mass over [0, 1].

    C(n, x) * B(x+1, n-x+1) = 1/(n+1) for every x, which calibrates the
    quadrature: (n+1) * integral must equal 1.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return 1.0 / (n + 1)
