"""Exact linear algebra over the prime fields F_p, p in {2, 3, 5, 7}.

Matrices are dense numpy integer arrays holding residues in [0, p).  All
routines are deterministic: pivots are chosen leftmost-column first, lowest
row index first, so equal subspaces always get identical echelon bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SUPPORTED_PRIMES
from .errors import InputError


def _check_prime(p: int) -> None:
    if p not in SUPPORTED_PRIMES:
        raise InputError(f"unsupported field characteristic {p}; use one of {SUPPORTED_PRIMES}")


def _inverse(x: int, p: int) -> int:
    # p is prime, so Fermat's little theorem applies
    return pow(int(x) % p, p - 2, p)


@dataclass(frozen=True)
class FFMatrix:
    """A matrix over F_p with entries stored as residues."""

    p: int
    array: np.ndarray

    def __post_init__(self):
        _check_prime(self.p)
        arr = np.asarray(self.array, dtype=np.int64)
        if arr.ndim != 2:
            raise InputError(f"FFMatrix needs a 2D array, got ndim={arr.ndim}")
        object.__setattr__(self, "array", arr % self.p)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``a`` over F_p.

    Returns the reduced array and the pivot column list.
    """
    a = np.asarray(a, dtype=np.int64) % p
    a = a.copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = (a[r] * _inverse(a[r, c], p)) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def row_reduce(m: FFMatrix) -> tuple[FFMatrix, list[int], int]:
    """RREF of ``m`` together with its pivot columns and rank."""
    reduced, pivots = rref(m.array, m.p)
    return FFMatrix(m.p, reduced), pivots, len(pivots)


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical echelon basis (rows) of the null space of ``a`` over F_p."""
    a = np.asarray(a, dtype=np.int64) % p
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    reduced, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    vecs = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        vecs[i, f] = 1
        for r, c in enumerate(pivots):
            vecs[i, c] = (-reduced[r, f]) % p
    canon, _ = rref(vecs, p)
    return canon


def image_array(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical echelon basis (rows) of the column space of ``a``."""
    a = np.asarray(a, dtype=np.int64) % p
    reduced, pivots = rref(a.T % p, p)
    return reduced[: len(pivots)]


def kernel_basis(m: FFMatrix) -> list[np.ndarray]:
    return [row for row in kernel_array(m.array, m.p)]


def image_basis(m: FFMatrix) -> list[np.ndarray]:
    return [row for row in image_array(m.array, m.p)]


def solve_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a x = b`` over F_p, or None when inconsistent.

    Free variables are set to zero, so the returned solution is canonical.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise InputError(f"solve: shape mismatch {a.shape} vs {b.shape}")
    aug = np.concatenate([a, b[:, None]], axis=1)
    reduced, pivots = rref(aug, p)
    if a.shape[1] in pivots:
        return None
    x = np.zeros(a.shape[1], dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = reduced[r, a.shape[1]]
    return x


def solve_many(a: np.ndarray, rhs: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``a X = rhs`` for all right-hand-side columns in one pass.

    Returns the solution matrix (free variables zero) or None if any
    column is inconsistent.
    """
    a = np.asarray(a, dtype=np.int64) % p
    rhs = np.asarray(rhs, dtype=np.int64) % p
    n = a.shape[1]
    aug = np.concatenate([a, rhs], axis=1)
    reduced, aug_pivots = rref(aug, p)
    # elimination runs left to right, so pivots falling inside the left
    # block are exactly the pivots of a; any pivot in the rhs block means
    # some column is inconsistent
    pivots = [c for c in aug_pivots if c < n]
    if len(pivots) != len(aug_pivots):
        return None
    x = np.zeros((n, rhs.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = reduced[r, n:]
    return x


def solve(m: FFMatrix, b: np.ndarray) -> np.ndarray | None:
    return solve_array(m.array, b, m.p)


def in_span(basis: list[np.ndarray] | np.ndarray, v: np.ndarray, p: int) -> bool:
    """Whether ``v`` lies in the row span of ``basis`` over F_p."""
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, np.asarray(v).shape[0]) % p
    v = np.asarray(v, dtype=np.int64) % p
    base = rank(basis, p)
    return rank(np.vstack([basis, v[None, :]]), p) == base


def span_rows(vectors: np.ndarray, p: int) -> np.ndarray:
    """Canonical echelon basis of the span of the given row vectors."""
    vectors = np.asarray(vectors, dtype=np.int64) % p
    if vectors.size == 0:
        return vectors.reshape(0, vectors.shape[1] if vectors.ndim == 2 else 0)
    reduced, pivots = rref(vectors, p)
    return reduced[: len(pivots)]


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a span.

    The stored rows always form the RREF of the span, so two Echelon
    objects over the same subspace hold identical matrices regardless of
    insertion order.
    """

    def __init__(self, p: int, ncols: int):
        _check_prime(p)
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of v modulo the current span."""
        v = np.asarray(v, dtype=np.int64) % self.p
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def add(self, v: np.ndarray) -> bool:
        """Insert v; returns True when it enlarged the span."""
        r = self.reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        r = (r * _inverse(r[c], self.p)) % self.p
        # keep full RREF: clear column c in the existing rows
        for i, row in enumerate(self.rows):
            if row[c]:
                self.rows[i] = (row - row[c] * r) % self.p
        pos = sum(1 for piv in self.pivots if piv < c)
        self.rows.insert(pos, r)
        self.pivots.insert(pos, c)
        return True

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.stack(self.rows)
