"""Python face of the ardr toolkit.

The compiled extension `_ardr` (built by the CMake tree) must be importable,
e.g. PYTHONPATH=<build dir> when working from a source checkout.
"""

from _ardr import (
    eq8_ratio,
    knn_accuracy,
    make_synthetic,
    neighborhood_b,
    pca_oracle,
    procrustes_residual,
    run_config,
    standardize,
)

__all__ = [
    "eq8_ratio",
    "knn_accuracy",
    "make_synthetic",
    "neighborhood_b",
    "pca_oracle",
    "procrustes_residual",
    "run_config",
    "standardize",
]
