"""Persistent-homology features (PHF) for 3-D point clouds.

Pipeline: coordinates -> distance matrix -> Vietoris-Rips filtration ->
persistence diagram -> fixed-length feature vector.
"""

from .errors import InvalidInput, ParseError, PhtopError, TooLarge
from .geometry import DistanceMatrix, PointCloud, distance_matrix, transform
from .rips import AUTO, FilteredComplex, Simplex, build_rips, complex_at
from .persistence import (
    Barcode,
    BettiCurve,
    DiagramPoint,
    PersistenceDiagram,
    betti_curve,
    compute_persistence,
    to_barcode,
)
from .metrics import bottleneck_distance, wasserstein_distance
from .vectorize import (
    ImageParams,
    PhfVector,
    bottleneck_amplitude,
    feature_names,
    featurize,
    persistence_entropy,
    persistence_image,
    point_count,
    wasserstein_amplitude,
)
from .oracle import betti_at
from .io import (
    DatasetManifest,
    parse_coords_csv,
    parse_xyz,
    read_diagram_json,
    write_diagram_json,
    write_features_csv,
)
from .estimators import PhfVectorizer, VietorisRipsPersistence

__version__ = "0.1.0"

__all__ = [
    "AUTO",
    "Barcode",
    "BettiCurve",
    "DatasetManifest",
    "DiagramPoint",
    "DistanceMatrix",
    "FilteredComplex",
    "ImageParams",
    "InvalidInput",
    "ParseError",
    "PersistenceDiagram",
    "PhfVector",
    "PhfVectorizer",
    "PhtopError",
    "PointCloud",
    "Simplex",
    "TooLarge",
    "VietorisRipsPersistence",
    "betti_at",
    "betti_curve",
    "bottleneck_amplitude",
    "bottleneck_distance",
    "build_rips",
    "complex_at",
    "compute_persistence",
    "distance_matrix",
    "feature_names",
    "featurize",
    "parse_coords_csv",
    "parse_xyz",
    "persistence_entropy",
    "persistence_image",
    "point_count",
    "read_diagram_json",
    "to_barcode",
    "transform",
    "wasserstein_amplitude",
    "wasserstein_distance",
    "write_diagram_json",
    "write_features_csv",
]
