"""Shared numeric tolerances and resource limits.

All tolerance constants used by validation live in one record so that
callers can tighten or relax them consistently.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

SUPPORTED_PRIMES = (2, 3, 5, 7)

# Hard cap on the number of simplices a single filtration may enumerate.
# Exceeding it raises ResourceLimitError instead of silently truncating.
MAX_SIMPLICES_DEFAULT = 5_000_000

# Environment knob mirroring the CLI configuration prefix.
MAX_SIMPLICES_ENV = "VRCUP_MAX_SIMPLICES"


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances for metric-space validation."""

    diagonal: float = 1e-9          # |d[i][i]| must stay below this
    symmetry: float = 1e-9          # post-repair symmetry requirement
    symmetry_repair: float = 1e-6   # asymmetry below this is averaged away
    triangle: float = 1e-9          # slack allowed in the triangle inequality


DEFAULT_TOLERANCES = Tolerances()


def max_simplices_limit() -> int:
    """Resolve the simplex-count guard, honoring the environment override."""
    raw = os.environ.get(MAX_SIMPLICES_ENV)
    if raw is None:
        return MAX_SIMPLICES_DEFAULT
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{MAX_SIMPLICES_ENV} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{MAX_SIMPLICES_ENV} must be positive, got {value}")
    return value
