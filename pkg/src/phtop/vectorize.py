"""Distilling persistence diagrams into fixed-length feature vectors.

Five feature families, each evaluated per homology dimension (H0, H1, H2):
persistence entropy, point count, bottleneck amplitude, Wasserstein
amplitude and a Gaussian persistence image. The compact ``paper18`` layout
is 18 numbers: the four scalar families (12) plus a 1x2 persistence image
per dimension (6). The ``full`` layout keeps the four scalar families and
an RxR image per dimension, 12 + 3*R^2 numbers.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput

LAYOUT_PAPER18 = "paper18"
LAYOUT_FULL = "full"

# grid shape (birth axis, persistence axis) of the paper18 image block
_PAPER18_IMAGE_SHAPE = (1, 2)


@dataclass(frozen=True)
class ImageParams:
    """Persistence image parameters.

    ``resolution`` is the pixel count per axis of square images;
    ``sigma`` the Gaussian bandwidth in Angstrom. Ranges default to
    [0, max birth] and [0, max persistence] of the diagram being imaged,
    padded by sigma on both ends; pass (lo, hi) pairs to fix them.
    """

    resolution: int = 5
    sigma: float = 0.1
    birth_range: tuple = None
    persistence_range: tuple = None

    def __post_init__(self):
        if self.resolution < 1:
            raise InvalidInput(f"resolution must be >= 1, got {self.resolution}")
        if not self.sigma > 0:
            raise InvalidInput(f"sigma must be positive, got {self.sigma}")


@dataclass(frozen=True)
class PhfVector:
    """Feature vector with its layout tag and per-slot names."""

    values: tuple
    layout: str
    names: tuple

    def __len__(self):
        return len(self.values)

    def as_array(self):
        return np.asarray(self.values, dtype=np.float64)


def persistence_entropy(diag, dim, log_base=2.0):
    """Shannon entropy of the normalized bar lengths of one dimension."""
    b, d = diag.points_of(dim)
    if b.size == 0:
        return 0.0
    lengths = d - b
    p = lengths / lengths.sum()
    return float(-(p * (np.log(p) / math.log(log_base))).sum() + 0.0)


def point_count(diag, dim):
    """Number of finite diagram points of one dimension."""
    return float(diag.count(dim))


def bottleneck_amplitude(diag, dim):
    """Bottleneck distance to the empty diagram: max of (death-birth)/2."""
    b, d = diag.points_of(dim)
    if b.size == 0:
        return 0.0
    return float((d - b).max() / 2.0)


def wasserstein_amplitude(diag, dim, order=2.0):
    """p-norm of the bar lengths scaled by 1/sqrt(2)."""
    p = float(order)
    if not p >= 1:
        raise InvalidInput(f"order must be >= 1, got {order!r}")
    b, d = diag.points_of(dim)
    if b.size == 0:
        return 0.0
    terms = (d - b) / math.sqrt(2.0)
    return float((terms**p).sum() ** (1.0 / p))


def _image_grid(births, perss, shape, sigma, birth_range, pers_range):
    """Weighted Gaussian rasterization on an explicit (rows, cols) grid."""
    rb, rp = shape
    if births.size == 0:
        return np.zeros((rb, rp))
    if birth_range is None:
        birth_range = (0.0 - sigma, births.max() + sigma)
    if pers_range is None:
        pers_range = (0.0 - sigma, perss.max() + sigma)
    b_lo, b_hi = map(float, birth_range)
    p_lo, p_hi = map(float, pers_range)
    if not (b_hi > b_lo and p_hi > p_lo):
        raise InvalidInput("image ranges must have positive extent")
    db = (b_hi - b_lo) / rb
    dp = (p_hi - p_lo) / rp
    b_centers = b_lo + (np.arange(rb) + 0.5) * db
    p_centers = p_lo + (np.arange(rp) + 0.5) * dp
    weights = perss / perss.max()
    norm = 1.0 / (2.0 * math.pi * sigma * sigma)
    gb = np.exp(-((b_centers[:, None] - births[None, :]) ** 2) / (2 * sigma * sigma))
    gp = np.exp(-((p_centers[:, None] - perss[None, :]) ** 2) / (2 * sigma * sigma))
    # separable Gaussian: grid[r, c] = sum_i w_i gb[r, i] gp[c, i]
    return (gb * weights[None, :]) @ gp.T * (norm * db * dp)


def persistence_image(diag, dim, params=None):
    """Square persistence image of one dimension in (birth, persistence)
    coordinates; pixel value is the weighted Gaussian density at the pixel
    center times the pixel area, with linear persistence weighting."""
    params = params or ImageParams()
    b, d = diag.points_of(dim)
    r = params.resolution
    return _image_grid(
        b, d - b, (r, r), params.sigma, params.birth_range, params.persistence_range
    )


def feature_names(layout, resolution=None):
    """Column names for a layout, in vector order."""
    if layout == LAYOUT_PAPER18:
        shape = _PAPER18_IMAGE_SHAPE
    elif layout == LAYOUT_FULL:
        if resolution is None or resolution < 1:
            raise InvalidInput("full layout needs a resolution >= 1")
        shape = (resolution, resolution)
    else:
        raise InvalidInput(f"unknown layout {layout!r}")
    names = []
    for family in ("entropy", "count", "bottleneck_amplitude", "wasserstein_amplitude"):
        names.extend(f"{family}_h{k}" for k in (0, 1, 2))
    for k in (0, 1, 2):
        for r in range(shape[0]):
            for c in range(shape[1]):
                names.append(f"image_h{k}_r{r}c{c}")
    return tuple(names)


def featurize(diag, n_points, layout=LAYOUT_PAPER18, params=None, log_base=2.0, wasserstein_order=2.0):
    """Assemble the full feature vector for one diagram.

    Families are laid out family-major, each holding its H0, H1 and H2
    values in order, with the image block last. ``n_points`` is the size
    of the originating cloud and guards against mismatched diagrams.
    """
    params = params or ImageParams()
    if n_points < 1:
        raise InvalidInput("n_points must be at least 1")
    if diag.count(0) > n_points - 1:
        raise InvalidInput(
            f"diagram has {diag.count(0)} finite H0 classes, impossible for {n_points} points"
        )
    if layout == LAYOUT_PAPER18:
        shape = _PAPER18_IMAGE_SHAPE
    elif layout == LAYOUT_FULL:
        shape = (params.resolution, params.resolution)
    else:
        raise InvalidInput(f"unknown layout {layout!r}")

    values = []
    values.extend(persistence_entropy(diag, k, log_base) for k in (0, 1, 2))
    values.extend(point_count(diag, k) for k in (0, 1, 2))
    values.extend(bottleneck_amplitude(diag, k) for k in (0, 1, 2))
    values.extend(wasserstein_amplitude(diag, k, wasserstein_order) for k in (0, 1, 2))
    for k in (0, 1, 2):
        b, d = diag.points_of(k)
        grid = _image_grid(
            b, d - b, shape, params.sigma, params.birth_range, params.persistence_range
        )
        values.extend(grid.ravel().tolist())
    return PhfVector(
        values=tuple(float(v) for v in values),
        layout=layout,
        names=feature_names(layout, resolution=shape[0] if layout == LAYOUT_FULL else None),
    )
