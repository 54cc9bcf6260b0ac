"""Helpers shared by the graded multiplication engines.

An "invariant value" pairs an integer with a lower-bound-only marker: when
any product had to be dropped because it overflowed the computed degree
range, the reported number is a certified lower bound rather than an exact
value, and the marker says so.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .ffield import Echelon


class InvariantValue(NamedTuple):
    value: int
    lower_bound_only: bool

    def __int__(self) -> int:
        return self.value


class ProductResult(NamedTuple):
    """Outcome of one multiplication: a coordinate vector plus exactness."""

    vec: np.ndarray
    exact: bool


def iterated_nilpotency(
    multiply: Callable[[np.ndarray, np.ndarray], ProductResult],
    seeds,
    p: int,
    total_dim: int,
    max_level: int,
    seeds_exact: bool = True,
) -> InvariantValue:
    """Longest non-zero product length of elements of span(seeds).

    Level k+1 is spanned by products of level-k basis vectors with seed
    basis vectors; by bilinearity its span equals the span of all
    (k+1)-fold products of seed elements.  Terminates because each product
    raises total degree, which is capped.
    """
    first = Echelon(p, total_dim)
    for s in seeds:
        first.add(s)
    exact = seeds_exact
    if first.rank == 0:
        return InvariantValue(0, not exact)
    level = 1
    current = first.matrix()
    while level <= max_level:
        nxt = Echelon(p, total_dim)
        for v in current:
            for w in first.matrix():
                prod = multiply(v, w)
                exact = exact and prod.exact
                if prod.vec.any():
                    nxt.add(prod.vec)
        if nxt.rank == 0:
            return InvariantValue(level, not exact)
        current = nxt.matrix()
        level += 1
    # degrees strictly increase with each product, so for well-formed graded
    # inputs the loop always returns above; treat an overrun as a bound
    return InvariantValue(level, True)


def offsets_from_dims(dims) -> list[int]:
    """Start offset of each degree block in a concatenated coordinate vector."""
    out = [0]
    for d in dims:
        out.append(out[-1] + int(d))
    return out
