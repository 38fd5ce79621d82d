"""Arithmetic backend selection for the quadrature.

The default backend is native float64 (>= 15 significant digits).  Setting
the environment variable ``LAPLACE_CI_PRECISION`` selects a software
extended-precision backend for accuracy audits:

    LAPLACE_CI_PRECISION=native        (default)
    LAPLACE_CI_PRECISION=mpmath        (113-bit mantissa)
    LAPLACE_CI_PRECISION=mpmath:240    (custom mantissa bits)

The mpmath backend evaluates the grid point by point in Python and is only
practical for small subdivision counts.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["PrecisionMode", "precision_mode", "PRECISION_ENV_VAR"]

PRECISION_ENV_VAR = "LAPLACE_CI_PRECISION"
_DEFAULT_MANTISSA_BITS = 113


@dataclass(frozen=True)
class PrecisionMode:
    name: str            # "native" or "mpmath"
    mantissa_bits: int   # significant bits carried by the backend

    @property
    def label(self) -> str:
        if self.name == "native":
            return "native"
        return f"{self.name}:{self.mantissa_bits}"


def precision_mode() -> PrecisionMode:
    """Parse the backend selection from the environment."""
    raw = os.environ.get(PRECISION_ENV_VAR, "native").strip().lower()
    if raw in ("", "native"):
        return PrecisionMode("native", 53)
    name, _, bits_s = raw.partition(":")
    if name != "mpmath":
        raise DomainError(
            f"unknown precision backend {raw!r}; expected 'native' or 'mpmath[:bits]'")
    if bits_s:
        try:
            bits = int(bits_s)
        except ValueError:
            raise DomainError(f"invalid mantissa bits {bits_s!r} in {PRECISION_ENV_VAR}") from None
        if bits < 53:
            raise DomainError(f"mantissa bits must be >= 53, got {bits}")
    else:
        bits = _DEFAULT_MANTISSA_BITS
    return PrecisionMode("mpmath", bits)
