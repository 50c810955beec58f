"""Feature ranking by median importance across trained models."""

import numpy as np


def importance_report(importances, feature_names, top_k=None):
    """Rank features by median importance over a stack of models.

    ``importances`` is (n_models, n_features), NaN where a model never saw
    a feature. Rows come out sorted by descending median, ties broken by
    feature position; each entry carries the 25th and 75th percentiles.
    """
    importances = np.asarray(importances, dtype=np.float64)
    if importances.ndim != 2 or importances.shape[1] != len(feature_names):
        raise ValueError(
            f"importances shape {importances.shape} does not match "
            f"{len(feature_names)} features"
        )
    p = importances.shape[1]
    seen = ~np.isnan(importances).all(axis=0)
    median = np.full(p, -np.inf)
    q25 = np.full(p, np.nan)
    q75 = np.full(p, np.nan)
    median[seen] = np.nanmedian(importances[:, seen], axis=0)
    q25[seen] = np.nanquantile(importances[:, seen], 0.25, axis=0)
    q75[seen] = np.nanquantile(importances[:, seen], 0.75, axis=0)
    order = np.lexsort((np.arange(len(feature_names)), -median))
    if top_k is not None:
        order = order[:top_k]
    return [
        {
            "feature": feature_names[i],
            "median": float(median[i]) if np.isfinite(median[i]) else None,
            "q25": float(q25[i]) if np.isfinite(q25[i]) else None,
            "q75": float(q75[i]) if np.isfinite(q75[i]) else None,
        }
        for i in order
    ]
