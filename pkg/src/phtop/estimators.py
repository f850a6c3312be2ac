"""scikit-learn compatible transformers wrapping the pipeline.

``VietorisRipsPersistence`` turns a list of point clouds into persistence
diagrams; ``PhfVectorizer`` turns diagrams into a feature matrix. Both are
stateless apart from hyperparameters, so ``fit`` only validates input and
the pair composes in a sklearn ``Pipeline``.
"""

from sklearn.base import BaseEstimator, TransformerMixin

import numpy as np

from .errors import InvalidInput
from .geometry import distance_matrix
from .persistence import compute_persistence
from .rips import AUTO, build_rips
from .validation import check_cloud_list
from .vectorize import ImageParams, featurize

_N_POINTS_KEY = "n_points"


class VietorisRipsPersistence(BaseEstimator, TransformerMixin):
    """Point clouds -> persistence diagrams.

    Parameters
    ----------
    threshold : float or "auto"
        Largest filtration value admitted; "auto" uses each cloud's
        diameter so every class dies.
    max_homology_dim : int, 0..2
        Highest homology dimension tracked; simplices are built one
        dimension higher.
    """

    def __init__(self, threshold=AUTO, max_homology_dim=2):
        self.threshold = threshold
        self.max_homology_dim = max_homology_dim

    def _check_params(self):
        if self.max_homology_dim not in (0, 1, 2):
            raise InvalidInput(
                f"max_homology_dim must be 0, 1 or 2, got {self.max_homology_dim}"
            )

    def fit(self, X, y=None):
        self._check_params()
        check_cloud_list(X)
        return self

    def transform(self, X, y=None):
        self._check_params()
        diagrams = []
        for cloud in check_cloud_list(X):
            fc = build_rips(
                distance_matrix(cloud), self.threshold, self.max_homology_dim + 1
            )
            diagrams.append(compute_persistence(fc))
        return diagrams


class PhfVectorizer(BaseEstimator, TransformerMixin):
    """Persistence diagrams -> feature matrix, one row per diagram."""

    def __init__(
        self,
        layout="paper18",
        resolution=5,
        sigma=0.1,
        log_base=2.0,
        wasserstein_order=2.0,
    ):
        self.layout = layout
        self.resolution = resolution
        self.sigma = sigma
        self.log_base = log_base
        self.wasserstein_order = wasserstein_order

    def fit(self, X, y=None):
        ImageParams(resolution=self.resolution, sigma=self.sigma)
        return self

    def transform(self, X, y=None):
        params = ImageParams(resolution=self.resolution, sigma=self.sigma)
        rows = []
        for diag in X:
            n_points = diag.metadata.get(_N_POINTS_KEY, diag.count(0) + 1)
            vec = featurize(
                diag,
                n_points,
                layout=self.layout,
                params=params,
                log_base=self.log_base,
                wasserstein_order=self.wasserstein_order,
            )
            rows.append(vec.values)
        return np.asarray(rows, dtype=np.float64)
