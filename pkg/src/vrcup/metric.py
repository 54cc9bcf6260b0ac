"""Finite metric spaces: ingestion, validation, and diameter bounds.

The distance-matrix CSV format understood here:

* comment lines start with ``#`` and are ignored,
* the first data line holds the integer point count ``n``,
* then ``n`` lines of ``n`` comma-separated decimal reals follow.

The writer emits 17 significant digits so load -> save -> load is the
identity on validated spaces.
"""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import InputError


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A validated symmetric distance matrix on n points.

    Instances are immutable after construction and safe to share across
    parallel workers.
    """

    dist: np.ndarray
    labels: tuple[str, ...] | None = None
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InputError(f"distance matrix must be square, got shape {d.shape}")
        if d.shape[0] == 0:
            raise InputError("a metric space needs at least one point")
        tol = self.tolerances
        if np.any(np.abs(np.diag(d)) > tol.diagonal):
            raise InputError("nonzero diagonal entry beyond tolerance")
        asym = np.max(np.abs(d - d.T)) if d.size else 0.0
        if asym > tol.symmetry_repair:
            raise InputError(f"asymmetry {asym:.3e} exceeds repair tolerance {tol.symmetry_repair:.1e}")
        if asym > 0.0:
            # silent repair: average the two triangles
            d = (d + d.T) / 2.0
        np.fill_diagonal(d, 0.0)
        if np.any(d < 0.0):
            raise InputError("negative distance entry")
        if self.labels is not None and len(self.labels) != d.shape[0]:
            raise InputError(f"{len(self.labels)} labels for {d.shape[0]} points")
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def check_triangle_inequality(self) -> bool:
        """Warn (not raise) on triangle-inequality violations.

        Vietoris-Rips constructions stay well defined for arbitrary
        symmetric dissimilarities, so a violation is only a warning.
        """
        d = self.dist
        # entry (i, j) of `through` is min over k of d[i,k] + d[k,j]
        through = np.min(d[:, :, None] + d[None, :, :], axis=1)
        worst = float(np.max(d - through))
        if worst > self.tolerances.triangle:
            warnings.warn(
                f"triangle inequality violated by up to {worst:.3e}; "
                "VR filtrations remain well defined",
                stacklevel=2,
            )
            return False
        return True


def euclidean_from_points(points) -> FiniteMetricSpace:
    """Pairwise Euclidean distances of a list of same-dimension vectors."""
    pts = [np.asarray(pt, dtype=np.float64).reshape(-1) for pt in points]
    if not pts:
        raise InputError("empty point list")
    dim = pts[0].shape[0]
    if dim < 1 or any(pt.shape[0] != dim for pt in pts):
        raise InputError("points must share one dimension d >= 1")
    arr = np.stack(pts)
    diff = arr[:, None, :] - arr[None, :, :]
    return FiniteMetricSpace(np.sqrt(np.sum(diff * diff, axis=2)))


def diameter(space: FiniteMetricSpace | float) -> float:
    """Maximum pairwise distance; accepts a raw diameter value unchanged."""
    if isinstance(space, FiniteMetricSpace):
        return float(np.max(space.dist))
    value = float(space)
    if value < 0:
        raise InputError("diameter must be non-negative")
    return value


def diameter_gh_lower_bound(x: FiniteMetricSpace | float, y: FiniteMetricSpace | float) -> float:
    """Half the diameter gap, a classical Gromov-Hausdorff lower bound.

    Raw diameter values are accepted so known manifold diameters can be
    compared without sampling the manifold.
    """
    return abs(diameter(x) - diameter(y)) / 2.0


def hausdorff_subset_distance(space: FiniteMetricSpace, indices) -> float:
    """Hausdorff distance (inside ``space``) between all points and a subset."""
    idx = sorted(set(int(i) for i in indices))
    if not idx:
        raise InputError("subset must be non-empty")
    if idx[0] < 0 or idx[-1] >= space.n:
        raise InputError("subset index out of range")
    return float(np.max(np.min(space.dist[:, idx], axis=1)))


def subspace(space: FiniteMetricSpace, indices) -> FiniteMetricSpace:
    """The restriction of a metric space to a subset of its points."""
    idx = [int(i) for i in indices]
    labels = None
    if space.labels is not None:
        labels = tuple(space.labels[i] for i in idx)
    return FiniteMetricSpace(space.dist[np.ix_(idx, idx)].copy(), labels=labels)


def load_distance_matrix(text, tolerances: Tolerances = DEFAULT_TOLERANCES) -> FiniteMetricSpace:
    """Parse the distance-matrix CSV format from a string or text stream."""
    if isinstance(text, (str, bytes)):
        stream = io.StringIO(text.decode() if isinstance(text, bytes) else text)
    else:
        stream = text
    data_lines = []
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data_lines.append(line)
    if not data_lines:
        raise InputError("empty distance-matrix file")
    try:
        n = int(data_lines[0])
    except ValueError as exc:
        raise InputError(f"first data line must be the point count, got {data_lines[0]!r}") from exc
    if n < 1:
        raise InputError(f"point count must be positive, got {n}")
    if len(data_lines) - 1 != n:
        raise InputError(f"expected {n} matrix rows, found {len(data_lines) - 1}")
    rows = []
    for k, line in enumerate(data_lines[1:]):
        parts = line.split(",")
        if len(parts) != n:
            raise InputError(f"row {k} has {len(parts)} entries, expected {n}")
        try:
            rows.append([float(part) for part in parts])
        except ValueError as exc:
            raise InputError(f"row {k} holds a non-numeric entry") from exc
    return FiniteMetricSpace(np.array(rows, dtype=np.float64), tolerances=tolerances)


def save_distance_matrix(space: FiniteMetricSpace, stream=None) -> str:
    """Serialize a space in the CSV format with 17 significant digits."""
    lines = [f"# finite metric space on {space.n} points", str(space.n)]
    for row in space.dist:
        lines.append(",".join(f"{value:.17g}" for value in row))
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text
