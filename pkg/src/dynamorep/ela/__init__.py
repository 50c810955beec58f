"""Pooled-sample landscape descriptors and feature elimination."""

from .eliminate import eliminate_features, feature_keep_mask
from .features import (
    DISP_QUANTILES,
    ELA_FEATURE_NAMES,
    basic_features,
    disp_features,
    ela_features,
    meta_features,
    pca_features,
    variance_ratios,
)

__all__ = [
    "DISP_QUANTILES",
    "ELA_FEATURE_NAMES",
    "basic_features",
    "disp_features",
    "ela_features",
    "eliminate_features",
    "feature_keep_mask",
    "meta_features",
    "pca_features",
    "variance_ratios",
]
