"""Simplicial cohomology rings over prime fields.

Cohomology is computed from coboundary matrices with explicit
representative cocycles, because the cup product (the front-face/back-face
rule with respect to the global vertex order) is evaluated on
representatives and then re-expressed in the basis modulo coboundaries.

A ring is *exact* when its complex is complete and the computed degree
range covers the complex dimension; everything above the range is then
genuinely zero.  Non-exact rings propagate a lower-bound-only marker into
every invariant derived from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, InsufficientSkeletonError, InternalConsistencyError
from .ffield import Echelon, image_array, kernel_array, solve_many, _check_prime, _inverse
from .grading import InvariantValue, ProductResult, iterated_nilpotency, offsets_from_dims
from .simplicial import SimplicialComplex

OK = "ok"
ZERO = "zero"        # genuinely zero: degree overflows a complete complex
UNKNOWN = "unknown"  # truncated: degree overflows the computed range only


def coboundary_matrix(K: SimplicialComplex, k: int, p: int) -> np.ndarray:
    """Matrix of delta^k: C^k -> C^{k+1} over F_p (rows: (k+1)-simplices)."""
    rows = K.simplices(k + 1)
    cols = K.index(k)
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for r, tau in enumerate(rows):
        for i in range(len(tau)):
            face = tau[:i] + tau[i + 1 :]
            mat[r, cols[face]] = (-1) ** i % p
    return mat


@dataclass
class GradedRing:
    """Cohomology of a simplicial complex with its multiplication table."""

    p: int
    max_deg: int
    complex: SimplicialComplex
    dims: tuple[int, ...]
    reps: tuple[np.ndarray, ...]        # per degree: (dim_k, n_k) cocycle rows
    cobound: tuple[np.ndarray, ...]     # per degree: echelon rows of im(delta)
    unit: np.ndarray                    # coordinates of 1 in the H^0 basis
    exact: bool
    mult: dict | None = None
    _offsets: list[int] = field(default_factory=list, repr=False)

    @property
    def total_dim(self) -> int:
        return int(sum(self.dims))

    def offsets(self) -> list[int]:
        if not self._offsets:
            self._offsets = offsets_from_dims(self.dims)
        return self._offsets

    def block(self, vec: np.ndarray, k: int) -> np.ndarray:
        off = self.offsets()
        return vec[off[k] : off[k + 1]]

    def embed(self, k: int, coords: np.ndarray) -> np.ndarray:
        out = np.zeros(self.total_dim, dtype=np.int64)
        off = self.offsets()
        out[off[k] : off[k + 1]] = coords % self.p
        return out

    def product_status(self, k1: int, k2: int) -> str:
        if k1 + k2 <= self.max_deg:
            return OK
        return ZERO if self.exact else UNKNOWN

    def basis_product(self, k1: int, i1: int, k2: int, i2: int):
        """(status, coords-in-degree-(k1+k2)) of a basis-class product."""
        status = self.product_status(k1, k2)
        if status != OK:
            return status, None
        if self.mult is None:
            raise InternalConsistencyError("multiplication table not built; run cup_products")
        return OK, self.mult[(k1, i1, k2, i2)]

    def multiply(self, x: np.ndarray, y: np.ndarray) -> ProductResult:
        """Bilinear product of two full graded coordinate vectors."""
        out = np.zeros(self.total_dim, dtype=np.int64)
        exact = True
        off = self.offsets()
        for k1 in range(self.max_deg + 1):
            xs = x[off[k1] : off[k1 + 1]]
            if not xs.any():
                continue
            for k2 in range(self.max_deg + 1):
                ys = y[off[k2] : off[k2 + 1]]
                if not ys.any():
                    continue
                status = self.product_status(k1, k2)
                if status == ZERO:
                    continue
                if status == UNKNOWN:
                    exact = False
                    continue
                d = k1 + k2
                for i1 in np.nonzero(xs)[0]:
                    for i2 in np.nonzero(ys)[0]:
                        coeff = int(xs[i1]) * int(ys[i2]) % self.p
                        _, coords = self.basis_product(k1, int(i1), k2, int(i2))
                        if coords is not None and coords.any():
                            out[off[d] : off[d + 1]] = (
                                out[off[d] : off[d + 1]] + coeff * coords
                            ) % self.p
        return ProductResult(out, exact)


@dataclass
class RingMap:
    """Degree-preserving ring homomorphism induced by a simplicial inclusion."""

    source: GradedRing
    target: GradedRing
    blocks: tuple[np.ndarray, ...]      # per degree: (target_dim_k, source_dim_k)

    def apply(self, k: int, coords: np.ndarray) -> np.ndarray:
        return (self.blocks[k] @ (np.asarray(coords) % self.source.p)) % self.source.p

    @property
    def p(self) -> int:
        return self.source.p


def _express_cochains(ring: GradedRing, k: int, cochains: np.ndarray) -> np.ndarray:
    """Coordinates (one column per cochain) of cocycles in the degree-k basis.

    Solves against [representatives | coboundaries]; failure means the
    input was not a cocycle, which callers treat as an internal error.
    """
    dim = ring.dims[k]
    n_k = ring.complex.n_simplices(k)
    cochains = np.asarray(cochains, dtype=np.int64).reshape(-1, n_k) % ring.p
    if dim == 0:
        return np.zeros((0, cochains.shape[0]), dtype=np.int64)
    a = np.concatenate([ring.reps[k], ring.cobound[k]], axis=0).T
    sol = solve_many(a, cochains.T, ring.p)
    if sol is None:
        raise InternalConsistencyError(f"degree-{k} cochain is not a cocycle modulo coboundaries")
    return sol[:dim]


def cohomology_basis(K: SimplicialComplex, p: int, max_deg: int) -> GradedRing:
    """Graded basis with representative cocycles; products via cup_products."""
    _check_prime(p)
    if max_deg < 0:
        raise InputError("max_deg must be >= 0")
    if K.dim_cap is not None and max_deg + 1 > K.dim_cap:
        raise InsufficientSkeletonError(
            f"H^{max_deg} needs the {max_deg + 1}-skeleton, but the complex "
            f"is only trusted up to dimension {K.dim_cap}"
        )
    dims: list[int] = []
    reps: list[np.ndarray] = []
    cobound: list[np.ndarray] = []
    prev_delta: np.ndarray | None = None
    for k in range(max_deg + 1):
        n_k = K.n_simplices(k)
        delta_k = coboundary_matrix(K, k, p)
        cocycles = kernel_array(delta_k, p) if n_k else np.zeros((0, 0), dtype=np.int64)
        if k == 0 or prev_delta is None:
            bnd = np.zeros((0, n_k), dtype=np.int64)
        else:
            bnd = image_array(prev_delta, p)
        # pick cocycle residuals that extend the coboundary span; the
        # residuals are themselves cocycles and give a canonical basis
        from .ffield import Echelon

        ech = Echelon(p, n_k)
        for row in bnd:
            ech.add(row)
        chosen: list[np.ndarray] = []
        for z in cocycles:
            r = ech.reduce(z)
            nz = np.nonzero(r)[0]
            if nz.size:
                r = (r * _inverse(r[int(nz[0])], p)) % p
                chosen.append(r)
                ech.add(r)
        dims.append(len(chosen))
        reps.append(
            np.stack(chosen) if chosen else np.zeros((0, n_k), dtype=np.int64)
        )
        cobound.append(bnd)
        prev_delta = delta_k
    ring = GradedRing(
        p=p,
        max_deg=max_deg,
        complex=K,
        dims=tuple(dims),
        reps=tuple(reps),
        cobound=tuple(cobound),
        unit=np.zeros(0, dtype=np.int64),
        exact=K.complete and max_deg >= K.top_dim,
    )
    ones = np.ones(K.n_simplices(0), dtype=np.int64)
    ring.unit = (
        _express_cochains(ring, 0, ones[None, :])[:, 0]
        if K.n_simplices(0)
        else np.zeros(0, dtype=np.int64)
    )
    return ring


def _cup_cochain(
    K: SimplicialComplex, k1: int, a: np.ndarray, k2: int, b: np.ndarray, p: int
) -> np.ndarray:
    """Front-face/back-face product of two cochains, in degree k1+k2."""
    d = k1 + k2
    top = K.simplices(d)
    idx1 = K.index(k1)
    idx2 = K.index(k2)
    out = np.zeros(len(top), dtype=np.int64)
    for r, sigma in enumerate(top):
        front = sigma[: k1 + 1]
        back = sigma[k1:]
        out[r] = int(a[idx1[front]]) * int(b[idx2[back]]) % p
    return out


def cup_products(ring: GradedRing) -> GradedRing:
    """Fill the multiplication table for all basis pairs within max_deg."""
    K = ring.complex
    p = ring.p
    mult: dict = {}
    for k1 in range(ring.max_deg + 1):
        for k2 in range(ring.max_deg + 1 - k1):
            d = k1 + k2
            n_pairs = ring.dims[k1] * ring.dims[k2]
            if n_pairs == 0:
                continue
            products = np.zeros((n_pairs, K.n_simplices(d)), dtype=np.int64)
            pairs = []
            row = 0
            for i1 in range(ring.dims[k1]):
                for i2 in range(ring.dims[k2]):
                    products[row] = _cup_cochain(
                        K, k1, ring.reps[k1][i1], k2, ring.reps[k2][i2], p
                    )
                    pairs.append((i1, i2))
                    row += 1
            coords = _express_cochains(ring, d, products)
            for row, (i1, i2) in enumerate(pairs):
                mult[(k1, i1, k2, i2)] = coords[:, row].copy()
    ring.mult = mult
    return ring


def build_ring(K: SimplicialComplex, p: int, max_deg: int) -> GradedRing:
    """Cohomology basis plus completed multiplication table."""
    return cup_products(cohomology_basis(K, p, max_deg))


def induced_map(ring_big: GradedRing, ring_small: GradedRing) -> RingMap:
    """Contravariant map on cohomology of an inclusion of complexes.

    ``ring_small`` must belong to a subcomplex of ``ring_big``'s complex;
    representatives restrict along the inclusion and are re-expressed in
    the small basis.
    """
    if ring_big.p != ring_small.p or ring_big.max_deg != ring_small.max_deg:
        raise InputError("induced_map needs matching characteristic and degree range")
    if not ring_small.complex.is_subcomplex_of(ring_big.complex):
        raise InputError("induced_map: target complex is not a subcomplex of the source")
    blocks: list[np.ndarray] = []
    for k in range(ring_big.max_deg + 1):
        small_simps = ring_small.complex.simplices(k)
        big_index = ring_big.complex.index(k)
        if ring_big.dims[k] == 0 or not small_simps:
            blocks.append(
                np.zeros((ring_small.dims[k], ring_big.dims[k]), dtype=np.int64)
            )
            continue
        positions = [big_index[s] for s in small_simps]
        restricted = ring_big.reps[k][:, positions]
        blocks.append(_express_cochains(ring_small, k, restricted))
    return RingMap(source=ring_big, target=ring_small, blocks=tuple(blocks))


def identity_map(ring: GradedRing) -> RingMap:
    return RingMap(
        source=ring,
        target=ring,
        blocks=tuple(np.eye(d, dtype=np.int64) for d in ring.dims),
    )


def compose(f: RingMap, g: RingMap) -> RingMap:
    """The composite ring map f after g (g.source feeds f ... target-side)."""
    if g.target is not f.source:
        raise InputError("compose: maps are not composable")
    return RingMap(
        source=g.source,
        target=f.target,
        blocks=tuple(
            (bf @ bg) % f.p for bf, bg in zip(f.blocks, g.blocks)
        ),
    )


def cup_length_of_map(f: RingMap) -> InvariantValue:
    """Longest non-zero product of positive-degree classes in the image."""
    target = f.target
    seeds = []
    for k in range(1, target.max_deg + 1):
        for j in range(f.source.dims[k]):
            img = f.blocks[k][:, j]
            if img.any():
                seeds.append(target.embed(k, img))
    value = iterated_nilpotency(
        target.multiply,
        seeds,
        target.p,
        target.total_dim,
        max_level=max(target.max_deg, 1),
    )
    exact_setting = f.source.exact and target.exact
    return InvariantValue(value.value, value.lower_bound_only or not exact_setting)


def cup_length(ring: GradedRing) -> InvariantValue:
    """Cup-length of the ring itself (identity-map case)."""
    return cup_length_of_map(identity_map(ring))


def check_graded_ring(ring: GradedRing) -> None:
    """Assert unit, associativity, and graded commutativity on the basis."""
    p = ring.p
    unit_vec = ring.embed(0, ring.unit)
    for k in range(ring.max_deg + 1):
        for i in range(ring.dims[k]):
            x = ring.embed(k, np.eye(ring.dims[k], dtype=np.int64)[i])
            left = ring.multiply(unit_vec, x)
            right = ring.multiply(x, unit_vec)
            if not np.array_equal(left.vec, x) or not np.array_equal(right.vec, x):
                raise InternalConsistencyError(f"unit law fails on degree-{k} basis class {i}")
    basis = [
        (k, i)
        for k in range(ring.max_deg + 1)
        for i in range(ring.dims[k])
    ]
    for k1, i1 in basis:
        for k2, i2 in basis:
            if k1 + k2 > ring.max_deg:
                continue
            s1, c12 = ring.basis_product(k1, i1, k2, i2)
            s2, c21 = ring.basis_product(k2, i2, k1, i1)
            sign = 1 if p == 2 else pow(-1, k1 * k2, p)
            if s1 == OK and s2 == OK:
                if not np.array_equal(c12, (sign * c21) % p):
                    raise InternalConsistencyError(
                        f"graded commutativity fails on ({k1},{i1}) * ({k2},{i2})"
                    )
            for k3, i3 in basis:
                if k1 + k2 + k3 > ring.max_deg:
                    continue
                x = ring.embed(k1, np.eye(ring.dims[k1], dtype=np.int64)[i1])
                y = ring.embed(k2, np.eye(ring.dims[k2], dtype=np.int64)[i2])
                z = ring.embed(k3, np.eye(ring.dims[k3], dtype=np.int64)[i3])
                xy_z = ring.multiply(ring.multiply(x, y).vec, z).vec
                x_yz = ring.multiply(x, ring.multiply(y, z).vec).vec
                if not np.array_equal(xy_z, x_yz):
                    raise InternalConsistencyError(
                        f"associativity fails on ({k1},{i1}),({k2},{i2}),({k3},{i3})"
                    )


def check_ring_map(f: RingMap) -> None:
    """Assert that a RingMap is unital and multiplicative on basis pairs."""
    src, tgt = f.source, f.target
    p = f.p
    if not np.array_equal(f.apply(0, src.unit), tgt.unit):
        raise InternalConsistencyError("ring map is not unital")
    for k1 in range(src.max_deg + 1):
        for k2 in range(src.max_deg + 1 - k1):
            d = k1 + k2
            for i1 in range(src.dims[k1]):
                for i2 in range(src.dims[k2]):
                    s_src, prod_src = src.basis_product(k1, i1, k2, i2)
                    if s_src != OK:
                        continue
                    fx = f.apply(k1, np.eye(src.dims[k1], dtype=np.int64)[i1])
                    fy = f.apply(k2, np.eye(src.dims[k2], dtype=np.int64)[i2])
                    lhs = f.apply(d, prod_src)
                    rhs = tgt.multiply(tgt.embed(k1, fx), tgt.embed(k2, fy))
                    if not np.array_equal(tgt.embed(d, lhs), rhs.vec):
                        raise InternalConsistencyError(
                            f"ring map not multiplicative on ({k1},{i1}) * ({k2},{i2})"
                        )
