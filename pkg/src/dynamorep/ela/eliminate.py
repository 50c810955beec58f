"""Feature elimination: drop columns that go missing or never vary.

The keep mask is computed on one table (the training rows) and can be
reapplied to another table with the same columns, so test rows never
influence which features survive.
"""

import numpy as np


def feature_keep_mask(values):
    """Boolean mask of columns with no missing values and some variation."""
    values = np.asarray(values, dtype=np.float64)
    has_nan = np.isnan(values).any(axis=0)
    keep = ~has_nan
    clean = values[:, keep]
    keep[keep] = clean.max(axis=0) != clean.min(axis=0)
    if not keep.any():
        raise ValueError("feature elimination removed every column")
    return keep


def eliminate_features(table):
    """Reduced table plus the mask that produced it."""
    keep = feature_keep_mask(table.values)
    return table.with_features(keep), keep
