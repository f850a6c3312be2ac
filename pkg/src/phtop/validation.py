"""Input validation helpers shared by the estimators, CLI and bindings."""

import numpy as np

from .errors import InvalidInput
from .geometry import PointCloud


def check_coordinates(X):
    """Coerce to a validated (n, 3) float64 coordinate array."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise InvalidInput(f"coordinates must have shape (n, 3), got {arr.shape}")
    if arr.shape[0] < 1:
        raise InvalidInput("need at least one point")
    if not np.isfinite(arr).all():
        raise InvalidInput("coordinates must be finite")
    return arr


def as_point_cloud(X):
    """Accept a PointCloud or anything coercible to (n, 3) coordinates."""
    if isinstance(X, PointCloud):
        return X
    return PointCloud(check_coordinates(X))


def check_cloud_list(X):
    """Validate a sequence of point clouds / coordinate arrays."""
    clouds = [as_point_cloud(x) for x in X]
    if not clouds:
        raise InvalidInput("need at least one point cloud")
    return clouds
