"""Finite simplicial complexes with a global vertex order.

A complex stores its simplices as strictly increasing vertex tuples,
grouped by dimension and sorted lexicographically, so that every later
computation (coboundaries, cup products, inclusions) is deterministic.

``dim_cap`` records whether the object is the whole space it represents
(None) or a skeleton truncated at some dimension.  The distinction drives
the exact-versus-lower-bound bookkeeping downstream: in a complete complex
a missing simplex dimension means the cochain group is genuinely zero.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InputError


@dataclass(frozen=True)
class SimplicialComplex:
    by_dim: tuple[tuple[tuple[int, ...], ...], ...]
    dim_cap: int | None = None
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def top_dim(self) -> int:
        return len(self.by_dim) - 1

    @property
    def complete(self) -> bool:
        return self.dim_cap is None

    def simplices(self, dim: int) -> tuple[tuple[int, ...], ...]:
        if dim < 0 or dim > self.top_dim:
            return ()
        return self.by_dim[dim]

    def n_simplices(self, dim: int) -> int:
        return len(self.simplices(dim))

    def index(self, dim: int) -> dict[tuple[int, ...], int]:
        """Position of each dim-simplex in the sorted listing (cached)."""
        if dim not in self._index:
            self._index[dim] = {s: i for i, s in enumerate(self.simplices(dim))}
        return self._index[dim]

    def has(self, simplex: tuple[int, ...]) -> bool:
        return simplex in self.index(len(simplex) - 1)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(
            other.has(s) for dim in range(self.top_dim + 1) for s in self.simplices(dim)
        )

    def total_simplices(self) -> int:
        return sum(len(group) for group in self.by_dim)


def make_complex(simplices, dim_cap: int | None = None, close_faces: bool = False) -> SimplicialComplex:
    """Build a complex from an iterable of vertex tuples.

    With ``close_faces`` the face closure is completed automatically;
    otherwise the input must already be face-closed.
    """
    seen: set[tuple[int, ...]] = set()
    for raw in simplices:
        s = tuple(int(v) for v in raw)
        if len(set(s)) != len(s) or list(s) != sorted(s):
            raise InputError(f"simplex vertices must be strictly increasing, got {raw}")
        seen.add(s)
        if close_faces:
            for k in range(1, len(s)):
                seen.update(combinations(s, k))
    if not close_faces:
        for s in seen:
            for k in range(1, len(s)):
                for face in combinations(s, k):
                    if face not in seen:
                        raise InputError(f"complex not face-closed: {face} missing under {s}")
    if not seen:
        return SimplicialComplex(by_dim=((),), dim_cap=dim_cap)
    top = max(len(s) for s in seen) - 1
    by_dim = tuple(
        tuple(sorted(s for s in seen if len(s) == dim + 1)) for dim in range(top + 1)
    )
    return SimplicialComplex(by_dim=by_dim, dim_cap=dim_cap)


def parse_complex_file(text) -> tuple[SimplicialComplex, dict[tuple[int, ...], float]]:
    """Parse the simplicial-complex text format.

    Each data line reads ``v0 v1 ... vk appearance``.  Faces not listed are
    completed automatically with appearance equal to the minimum over the
    listed simplices containing them, which is the smallest monotone
    filtration compatible with the file.
    """
    if isinstance(text, (str, bytes)):
        stream = io.StringIO(text.decode() if isinstance(text, bytes) else text)
    else:
        stream = text
    listed: list[tuple[tuple[int, ...], float]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise InputError(f"line {lineno}: need 'v0 ... vk appearance'")
        try:
            verts = tuple(int(tok) for tok in parts[:-1])
            appearance = float(parts[-1])
        except ValueError as exc:
            raise InputError(f"line {lineno}: malformed simplex line") from exc
        if appearance < 0:
            raise InputError(f"line {lineno}: negative appearance value")
        if tuple(sorted(set(verts))) != verts:
            raise InputError(f"line {lineno}: vertices must be strictly increasing")
        listed.append((verts, appearance))
    if not listed:
        raise InputError("empty complex file")
    appearances: dict[tuple[int, ...], float] = {}
    for verts, appearance in listed:
        for k in range(1, len(verts) + 1):
            for face in combinations(verts, k):
                prev = appearances.get(face)
                if prev is None or appearance < prev:
                    appearances[face] = appearance
    complex_ = make_complex(appearances.keys(), dim_cap=None, close_faces=False)
    return complex_, appearances


def load_complex_file(path) -> tuple[SimplicialComplex, dict[tuple[int, ...], float]]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_complex_file(handle)
