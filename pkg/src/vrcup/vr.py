"""Vietoris-Rips filtrations of finite metric spaces.

The default scale convention is open, ``diam(sigma) < t``; the closed
variant ``diam(sigma) <= t`` is available through the ``convention`` flag
on the filtration.  Under the open convention snapshots are constant on
half-open grid cells ``(g_k, g_{k+1}]``; queries landing exactly on a grid
value resolve downward.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import max_simplices_limit
from .errors import InputError, ResourceLimitError
from .metric import FiniteMetricSpace
from .simplicial import SimplicialComplex, make_complex

OPEN = "open"
CLOSED = "closed"
CONVENTIONS = (OPEN, CLOSED)


@dataclass(frozen=True)
class Simplex:
    """A simplex with the diameter of its vertex set as appearance value."""

    vertices: tuple[int, ...]
    appearance: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class FilteredComplex:
    space: FiniteMetricSpace | None
    max_dim: int
    scale_cap: float
    simplices: tuple[Simplex, ...]
    grid: tuple[float, ...]
    convention: str = OPEN

    def appearance_of(self, vertices: tuple[int, ...]) -> float:
        if not hasattr(self, "_lookup"):
            object.__setattr__(
                self, "_lookup", {s.vertices: s.appearance for s in self.simplices}
            )
        return self._lookup[vertices]


def _vr_grid(simplices) -> tuple[float, ...]:
    values = sorted({s.appearance for s in simplices} | {0.0})
    return tuple(values)


def build_vr(
    space: FiniteMetricSpace,
    max_dim: int,
    scale_cap: float = float("inf"),
    convention: str = OPEN,
    max_simplices: int | None = None,
) -> FilteredComplex:
    """Enumerate all simplices of dimension <= max_dim with diameter < scale_cap.

    Expansion is incremental with neighbor-intersection pruning.  Exceeding
    the simplex-count guard raises ResourceLimitError rather than silently
    truncating.
    """
    if max_dim < 0:
        raise InputError(f"max_dim must be >= 0, got {max_dim}")
    if convention not in CONVENTIONS:
        raise InputError(f"convention must be one of {CONVENTIONS}")
    if max_simplices is None:
        max_simplices = max_simplices_limit()
    n = space.n
    dist = space.dist
    # upper-neighbor lists under the scale cap; the cap itself is an open bound
    neighbors = [
        [j for j in range(i + 1, n) if dist[i, j] < scale_cap] for i in range(n)
    ]
    out: list[Simplex] = []
    count = 0

    def guard():
        nonlocal count
        count += 1
        if count > max_simplices:
            raise ResourceLimitError(
                f"simplex count exceeds the configured limit of {max_simplices}"
            )

    def expand(verts: list[int], diam: float, cands: list[int]):
        guard()
        out.append(Simplex(tuple(verts), diam))
        if len(verts) == max_dim + 1:
            return
        for idx, u in enumerate(cands):
            new_diam = max(diam, float(max(dist[v, u] for v in verts)))
            if not new_diam < scale_cap:
                continue
            rest = [w for w in cands[idx + 1 :] if dist[u, w] < scale_cap]
            expand(verts + [u], new_diam, rest)

    for v in range(n):
        expand([v], 0.0, neighbors[v])

    out.sort(key=lambda s: (s.appearance, s.dim, s.vertices))
    return FilteredComplex(
        space=space,
        max_dim=max_dim,
        scale_cap=scale_cap,
        simplices=tuple(out),
        grid=_vr_grid(out),
        convention=convention,
    )


def filtered_complex_from_appearances(
    appearances: dict[tuple[int, ...], float],
    convention: str = OPEN,
    max_dim: int | None = None,
) -> FilteredComplex:
    """Wrap an explicit (face-closed) appearance map as a filtration.

    Used for complexes loaded from the simplicial-complex text format.
    """
    simplices = [Simplex(v, a) for v, a in appearances.items()]
    for s in simplices:
        if s.dim > 0:
            for drop in range(len(s.vertices)):
                face = s.vertices[:drop] + s.vertices[drop + 1 :]
                if appearances[face] > s.appearance:
                    raise InputError(f"face {face} appears after {s.vertices}")
    simplices.sort(key=lambda s: (s.appearance, s.dim, s.vertices))
    top = max((s.dim for s in simplices), default=0)
    return FilteredComplex(
        space=None,
        max_dim=top if max_dim is None else max_dim,
        scale_cap=float("inf"),
        simplices=tuple(simplices),
        grid=_vr_grid(simplices),
        convention=convention,
    )


def complex_at(fc: FilteredComplex, t: float) -> SimplicialComplex:
    """Freeze the filtration at scale t.

    Open convention keeps appearance < t, closed keeps appearance <= t.
    """
    if t < 0:
        raise InputError("scale must be non-negative")
    if np.isfinite(fc.scale_cap) and t > fc.scale_cap:
        raise InputError(
            f"snapshot at t={t} is not faithful: the filtration was capped at {fc.scale_cap}"
        )
    if fc.convention == OPEN:
        chosen = [s for s in fc.simplices if s.appearance < t]
    else:
        chosen = [s for s in fc.simplices if s.appearance <= t]
    if not chosen:
        return SimplicialComplex(by_dim=((),), dim_cap=None)
    top = max(s.dim for s in chosen)
    # A VR snapshot may have been cut by the dimension cap; it certainly was
    # not when the cap exceeds n-1 or when no simplex reaches the cap.  File
    # filtrations (space is None) describe the whole object and stay complete.
    capped = (
        fc.space is not None
        and fc.max_dim < fc.space.n - 1
        and top == fc.max_dim
    )
    return make_complex(
        (s.vertices for s in chosen),
        dim_cap=fc.max_dim if capped else None,
    )


def critical_values(fc: FilteredComplex) -> list[float]:
    """Distinct appearance values, ascending, prefixed with 0."""
    return list(fc.grid)
