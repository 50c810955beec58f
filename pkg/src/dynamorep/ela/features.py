"""Landscape descriptors of a pooled run sample.

Four categories are computed on the concatenated (points, values) sample
of a run: sample statistics (``basic``), dispersion of best-quantile
subsets (``disp``), surrogate-fit quality (``ela_meta``), and principal
component summaries (``pca``). Undefined values are NaN; downstream
elimination removes any column that ever goes missing.
"""

import math
from itertools import combinations

import numpy as np
from scipy.spatial.distance import pdist

DISP_QUANTILES = (0.02, 0.05, 0.10, 0.25)

ELA_FEATURE_NAMES = (
    "basic.dim",
    "basic.observations",
    "basic.lower_min",
    "basic.lower_max",
    "basic.upper_min",
    "basic.upper_max",
    "basic.objective_min",
    "basic.objective_max",
    "basic.minimize_fun",
    "disp.ratio_mean_02",
    "disp.ratio_mean_05",
    "disp.ratio_mean_10",
    "disp.ratio_mean_25",
    "disp.ratio_median_02",
    "disp.ratio_median_05",
    "disp.ratio_median_10",
    "disp.ratio_median_25",
    "disp.diff_mean_02",
    "disp.diff_mean_05",
    "disp.diff_mean_10",
    "disp.diff_mean_25",
    "disp.diff_median_02",
    "disp.diff_median_05",
    "disp.diff_median_10",
    "disp.diff_median_25",
    "ela_meta.lin_simple.adj_r2",
    "ela_meta.lin_simple.intercept",
    "ela_meta.lin_simple.coef.min",
    "ela_meta.lin_simple.coef.max",
    "ela_meta.lin_simple.coef.max_by_min",
    "ela_meta.lin_w_interact.adj_r2",
    "ela_meta.quad_simple.adj_r2",
    "ela_meta.quad_simple.cond",
    "ela_meta.quad_w_interact.adj_r2",
    "pca.expl_var.cov_x",
    "pca.expl_var.cor_x",
    "pca.expl_var.cov_init",
    "pca.expl_var.cor_init",
    "pca.expl_var_PC1.cov_x",
    "pca.expl_var_PC1.cor_x",
    "pca.expl_var_PC1.cov_init",
    "pca.expl_var_PC1.cor_init",
)


def basic_features(points, values):
    lower = points.min(axis=0)
    upper = points.max(axis=0)
    return {
        "basic.dim": float(points.shape[1]),
        "basic.observations": float(points.shape[0]),
        "basic.lower_min": float(lower.min()),
        "basic.lower_max": float(lower.max()),
        "basic.upper_min": float(upper.min()),
        "basic.upper_max": float(upper.max()),
        "basic.objective_min": float(values.min()),
        "basic.objective_max": float(values.max()),
        "basic.minimize_fun": 1.0,
    }


def _ratio(subset_stat, full_stat):
    if full_stat == 0.0 and subset_stat == 0.0:
        return math.nan
    return subset_stat / full_stat


def disp_features(points, values):
    order = np.argsort(values, kind="stable")
    full = pdist(points)
    full_mean = float(full.mean())
    full_median = float(np.median(full))
    out = {}
    for q in DISP_QUANTILES:
        tag = f"{int(round(q * 100)):02d}"
        size = math.ceil(q * points.shape[0])
        if size < 2:
            out[f"disp.ratio_mean_{tag}"] = math.nan
            out[f"disp.ratio_median_{tag}"] = math.nan
            out[f"disp.diff_mean_{tag}"] = math.nan
            out[f"disp.diff_median_{tag}"] = math.nan
            continue
        sub = pdist(points[order[:size]])
        sub_mean = float(sub.mean())
        sub_median = float(np.median(sub))
        out[f"disp.ratio_mean_{tag}"] = _ratio(sub_mean, full_mean)
        out[f"disp.ratio_median_{tag}"] = _ratio(sub_median, full_median)
        out[f"disp.diff_mean_{tag}"] = sub_mean - full_mean
        out[f"disp.diff_median_{tag}"] = sub_median - full_median
    return out


def _interaction_columns(points):
    d = points.shape[1]
    return [points[:, i] * points[:, j] for i, j in combinations(range(d), 2)]


def _fit(values, columns):
    """Least squares with intercept; returns (adjusted R^2, coefficients).

    Rank-deficient designs go through the SVD pseudo-inverse inside lstsq.
    A zero-variance target is defined to have R^2 = 0 and zero slope
    coefficients.
    """
    n = len(values)
    n_predictors = len(columns)
    design = np.column_stack([np.ones(n)] + list(columns))
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    dev = values - values.mean()
    ss_tot = float(dev @ dev)
    if ss_tot == 0.0:
        r2 = 0.0
        coef = np.zeros_like(coef)
    else:
        resid = values - design @ coef
        r2 = 1.0 - float(resid @ resid) / ss_tot
    adj = 1.0 - (1.0 - r2) * (n - 1) / (n - n_predictors - 1)
    return adj, coef


def meta_features(points, values):
    d = points.shape[1]
    x_cols = [points[:, j] for j in range(d)]
    sq_cols = [points[:, j] ** 2 for j in range(d)]
    inter_cols = _interaction_columns(points)

    lin_adj, lin_coef = _fit(values, x_cols)
    lin_inter_adj, _ = _fit(values, x_cols + inter_cols)
    quad_adj, quad_coef = _fit(values, x_cols + sq_cols)
    quad_inter_adj, _ = _fit(values, x_cols + sq_cols + inter_cols)

    slopes = np.abs(lin_coef[1:])
    coef_min = float(slopes.min())
    coef_max = float(slopes.max())
    quad_terms = np.abs(quad_coef[1 + d :])
    quad_min = float(quad_terms.min())
    quad_max = float(quad_terms.max())
    return {
        "ela_meta.lin_simple.adj_r2": lin_adj,
        "ela_meta.lin_simple.intercept": float(lin_coef[0]),
        "ela_meta.lin_simple.coef.min": coef_min,
        "ela_meta.lin_simple.coef.max": coef_max,
        "ela_meta.lin_simple.coef.max_by_min": (
            coef_max / coef_min if coef_min != 0.0 else math.nan
        ),
        "ela_meta.lin_w_interact.adj_r2": lin_inter_adj,
        "ela_meta.quad_simple.adj_r2": quad_adj,
        "ela_meta.quad_simple.cond": (
            quad_max / quad_min if quad_min != 0.0 else math.nan
        ),
        "ela_meta.quad_w_interact.adj_r2": quad_inter_adj,
    }


def variance_ratios(matrix, correlation):
    """Descending explained-variance proportions of a column sample."""
    with np.errstate(invalid="ignore", divide="ignore"):
        if correlation:
            sigma = np.corrcoef(matrix, rowvar=False)
        else:
            sigma = np.cov(matrix, rowvar=False)
        # a constant column yields NaNs in the correlation matrix, and
        # eigvalsh raises on non-finite input instead of passing NaN through
        if not np.all(np.isfinite(sigma)):
            return np.full(matrix.shape[1], np.nan)
        eig = np.linalg.eigvalsh(sigma)[::-1]
        total = eig.sum()
        if not np.isfinite(total) or total <= 0.0:
            return np.full(matrix.shape[1], np.nan)
        return eig / total


def _pca_pair(matrix, correlation):
    ratios = variance_ratios(matrix, correlation)
    if not np.all(np.isfinite(ratios)):
        return math.nan, math.nan
    cum = np.cumsum(ratios)
    needed = int(np.argmax(cum >= 0.9)) + 1
    return needed / matrix.shape[1], float(ratios[0])


def pca_features(points, values):
    init = np.column_stack([points, values])
    ev_cov_x, pc1_cov_x = _pca_pair(points, correlation=False)
    ev_cor_x, pc1_cor_x = _pca_pair(points, correlation=True)
    ev_cov_i, pc1_cov_i = _pca_pair(init, correlation=False)
    ev_cor_i, pc1_cor_i = _pca_pair(init, correlation=True)
    return {
        "pca.expl_var.cov_x": ev_cov_x,
        "pca.expl_var.cor_x": ev_cor_x,
        "pca.expl_var.cov_init": ev_cov_i,
        "pca.expl_var.cor_init": ev_cor_i,
        "pca.expl_var_PC1.cov_x": pc1_cov_x,
        "pca.expl_var_PC1.cor_x": pc1_cor_x,
        "pca.expl_var_PC1.cov_init": pc1_cov_i,
        "pca.expl_var_PC1.cor_init": pc1_cor_i,
    }


def ela_features(points, values):
    """Full descriptor vector in ``ELA_FEATURE_NAMES`` order."""
    points = np.asarray(points, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if points.ndim != 2 or values.shape != (points.shape[0],):
        raise ValueError(
            f"expected (rows, d) points with matching values, got "
            f"{points.shape} and {values.shape}"
        )
    table = {}
    table.update(basic_features(points, values))
    table.update(disp_features(points, values))
    table.update(meta_features(points, values))
    table.update(pca_features(points, values))
    return np.array([table[name] for name in ELA_FEATURE_NAMES])
