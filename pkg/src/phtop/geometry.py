"""Point clouds and the Euclidean distance matrix that defines the metric space."""

import numpy as np
from scipy.spatial.distance import cdist

from .errors import InvalidInput


def _as_readonly(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


class PointCloud:
    """An ordered set of 3-D coordinates (in Angstrom) with inert labels.

    Labels (atom symbols, typically) are carried through for bookkeeping
    only; nothing downstream of this class reads them.

    Parameters
    ----------
    points : array-like, shape=[n, 3]
        Cartesian coordinates. At least one point; all entries finite.
    labels : sequence of str, optional
        One tag per point.
    comment : str, optional
        Free-text metadata (e.g. the second line of an XYZ file).
    """

    def __init__(self, points, labels=None, comment=""):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 3:
            raise InvalidInput(f"points must have shape (n, 3), got {points.shape}")
        if points.shape[0] < 1:
            raise InvalidInput("point cloud must contain at least one point")
        if not np.isfinite(points).all():
            raise InvalidInput("point coordinates must be finite")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != points.shape[0]:
                raise InvalidInput(
                    f"got {len(labels)} labels for {points.shape[0]} points"
                )
        self.points = _as_readonly(points)
        self.labels = labels
        self.comment = comment

    def __len__(self):
        return self.points.shape[0]

    def __repr__(self):
        return f"PointCloud(n={len(self)})"

    def __eq__(self, other):
        if not isinstance(other, PointCloud):
            return NotImplemented
        return (
            self.points.shape == other.points.shape
            and bool(np.all(self.points == other.points))
            and self.labels == other.labels
        )


class DistanceMatrix:
    """Symmetric matrix of pairwise Euclidean distances (Angstrom).

    Construction validates symmetry, zero diagonal, nonnegativity and
    finiteness. The triangle inequality holds by construction for matrices
    produced by :func:`distance_matrix`; it is checked here only for small
    matrices (n <= 256) to keep construction O(n^2) at scale.
    """

    _TRIANGLE_CHECK_MAX_N = 256

    def __init__(self, entries):
        entries = np.asarray(entries, dtype=np.float64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise InvalidInput(f"entries must be square, got {entries.shape}")
        if not np.isfinite(entries).all():
            raise InvalidInput("distance entries must be finite")
        if (entries < 0).any():
            raise InvalidInput("distance entries must be nonnegative")
        if np.abs(np.diagonal(entries)).max() != 0.0:
            raise InvalidInput("diagonal of a distance matrix must be zero")
        if not np.array_equal(entries, entries.T):
            raise InvalidInput("distance matrix must be symmetric")
        n = entries.shape[0]
        if n <= self._TRIANGLE_CHECK_MAX_N:
            # d(i,k) <= d(i,j) + d(j,k), with absolute slack for rounding
            best = np.min(entries[:, :, None] + entries[None, :, :], axis=1)
            if (entries > best + 1e-9).any():
                raise InvalidInput("distance matrix violates the triangle inequality")
        self.entries = _as_readonly(entries)
        self.n = n

    def max_distance(self):
        return float(self.entries.max())

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"


def distance_matrix(cloud):
    """Pairwise Euclidean distances of a point cloud.

    The result defines the finite metric space that the Vietoris-Rips
    filtration is built over.
    """
    d = cdist(cloud.points, cloud.points)
    # cdist of identical arrays is symmetric up to rounding; make it exact
    d = np.minimum(d, d.T)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d)


def transform(cloud, rotation, translation, mirror=False):
    """Apply a rigid motion (optionally improper) to a point cloud.

    Points are reflected through the xy-plane first when ``mirror`` is set,
    then rotated and translated: ``p -> R @ (M @ p) + t``. Labels and the
    comment are preserved. Raises :class:`InvalidInput` if ``rotation`` is
    not orthogonal within 1e-9.
    """
    rotation = np.asarray(rotation, dtype=np.float64)
    translation = np.asarray(translation, dtype=np.float64).reshape(3)
    if rotation.shape != (3, 3):
        raise InvalidInput(f"rotation must be 3x3, got {rotation.shape}")
    if not np.isfinite(rotation).all() or not np.isfinite(translation).all():
        raise InvalidInput("transform parameters must be finite")
    err = np.abs(rotation.T @ rotation - np.eye(3)).max()
    if err > 1e-9:
        raise InvalidInput(f"rotation is not orthogonal (|R^T R - I| = {err:.3g})")
    pts = cloud.points
    if mirror:
        pts = pts * np.array([1.0, 1.0, -1.0])
    moved = pts @ rotation.T + translation
    return PointCloud(moved, labels=cloud.labels, comment=cloud.comment)
