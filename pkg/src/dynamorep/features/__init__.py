"""Run descriptors: trajectory statistics and the shared table container."""

from .dynamorep import (
    STATISTICS,
    feature_names,
    iteration_stats,
    trajectory_features,
)
from .table import FeatureTable, read_feature_csv, write_feature_csv

__all__ = [
    "STATISTICS",
    "FeatureTable",
    "feature_names",
    "iteration_stats",
    "read_feature_csv",
    "trajectory_features",
    "write_feature_csv",
]
