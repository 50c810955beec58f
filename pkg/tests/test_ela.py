import math

import numpy as np
import pytest

from dynamorep.ela import (
    DISP_QUANTILES,
    ELA_FEATURE_NAMES,
    basic_features,
    disp_features,
    ela_features,
    eliminate_features,
    feature_keep_mask,
    meta_features,
    pca_features,
    variance_ratios,
)


def sample(n=300, d=3, seed=0):
    rng = np.random.default_rng(seed)
    return rng.uniform(-5, 5, (n, d))


def test_feature_name_count_and_uniqueness():
    assert len(ELA_FEATURE_NAMES) == 42
    assert len(set(ELA_FEATURE_NAMES)) == 42


def test_vector_aligned_with_names():
    points = sample()
    values = np.sum(points**2, axis=1)
    vec = ela_features(points, values)
    assert vec.shape == (42,)
    by_name = {}
    for fn in (basic_features, disp_features, meta_features, pca_features):
        by_name.update(fn(points, values))
    for k, name in enumerate(ELA_FEATURE_NAMES):
        expected = by_name[name]
        if math.isnan(expected):
            assert math.isnan(vec[k]), name
        else:
            assert vec[k] == expected, name


def test_basic_features_values():
    points = np.array([[0.0, -2.0], [1.0, 3.0], [4.0, 0.5]])
    values = np.array([7.0, -1.0, 2.0])
    out = basic_features(points, values)
    assert out["basic.dim"] == 2.0
    assert out["basic.observations"] == 3.0
    assert out["basic.lower_min"] == -2.0  # min over per-dim minima (0, -2)
    assert out["basic.lower_max"] == 0.0
    assert out["basic.upper_min"] == 3.0  # min over per-dim maxima (4, 3)
    assert out["basic.upper_max"] == 4.0
    assert out["basic.objective_min"] == -1.0
    assert out["basic.objective_max"] == 7.0
    assert out["basic.minimize_fun"] == 1.0


def test_meta_linear_fit_exact():
    points = sample(400, 3, seed=2)
    values = 2.0 + 3.0 * points[:, 0] - 1.5 * points[:, 1] + 0.25 * points[:, 2]
    out = meta_features(points, values)
    assert abs(out["ela_meta.lin_simple.adj_r2"] - 1.0) <= 1e-9
    assert out["ela_meta.lin_simple.intercept"] == pytest.approx(2.0, abs=1e-9)
    assert out["ela_meta.lin_simple.coef.min"] == pytest.approx(0.25, abs=1e-9)
    assert out["ela_meta.lin_simple.coef.max"] == pytest.approx(3.0, abs=1e-9)
    assert out["ela_meta.lin_simple.coef.max_by_min"] == pytest.approx(
        12.0, rel=1e-6
    )
    assert abs(out["ela_meta.lin_w_interact.adj_r2"] - 1.0) <= 1e-9


def test_meta_quadratic_fit_exact():
    points = sample(400, 3, seed=3)
    values = np.sum(points**2, axis=1)
    out = meta_features(points, values)
    assert abs(out["ela_meta.quad_simple.adj_r2"] - 1.0) <= 1e-6
    assert abs(out["ela_meta.quad_w_interact.adj_r2"] - 1.0) <= 1e-6
    # equal curvature in every direction
    assert out["ela_meta.quad_simple.cond"] == pytest.approx(1.0, rel=1e-6)
    # a pure quadratic is a poor linear fit
    assert out["ela_meta.lin_simple.adj_r2"] < 0.5


def test_meta_constant_target_convention():
    points = sample(100, 3, seed=4)
    values = np.full(100, 3.25)
    out = meta_features(points, values)
    # R^2 defined as 0, slopes zeroed, so the ratios go undefined
    assert out["ela_meta.lin_simple.coef.min"] == 0.0
    assert math.isnan(out["ela_meta.lin_simple.coef.max_by_min"])
    assert math.isnan(out["ela_meta.quad_simple.cond"])
    assert out["ela_meta.lin_simple.adj_r2"] < 0.0  # adjustment of R^2 = 0


def test_disp_two_cluster_contrast():
    """Best-fitness points clustered tightly: dispersion ratios drop below 1."""
    rng = np.random.default_rng(5)
    good = rng.normal(0.0, 0.05, (30, 3))
    bad = rng.normal(4.0, 2.0, (270, 3))
    points = np.vstack([good, bad])
    values = np.concatenate([np.zeros(30), np.ones(270)])
    out = disp_features(points, values)
    for q in ("02", "05", "10"):
        assert out[f"disp.ratio_mean_{q}"] < 0.5
        assert out[f"disp.diff_mean_{q}"] < 0.0
    assert set(DISP_QUANTILES) == {0.02, 0.05, 0.10, 0.25}


def test_disp_uniform_sample_near_one():
    points = sample(500, 3, seed=6)
    values = np.arange(500, dtype=float)  # fitness unrelated to position
    rng = np.random.default_rng(7)
    rng.shuffle(values)
    out = disp_features(points, values)
    assert out["disp.ratio_mean_25"] == pytest.approx(1.0, abs=0.15)


def test_disp_tiny_subset_nan():
    points = sample(20, 2, seed=8)
    values = np.arange(20, dtype=float)
    out = disp_features(points, values)
    # ceil(0.02 * 20) = 1 point: no pairwise distances
    assert math.isnan(out["disp.ratio_mean_02"])
    assert not math.isnan(out["disp.ratio_mean_25"])


def test_variance_ratios_sum_to_one():
    m = sample(200, 4, seed=9)
    for correlation in (False, True):
        ratios = variance_ratios(m, correlation)
        assert ratios.shape == (4,)
        assert abs(ratios.sum() - 1.0) <= 1e-9
        assert np.all(np.diff(ratios) <= 1e-12)


def test_pca_single_direction():
    rng = np.random.default_rng(10)
    t = rng.normal(0, 1, 300)
    points = np.column_stack([t, 2.0 * t, -0.5 * t])
    values = np.zeros(300)
    out = pca_features(points, values)
    # one component explains everything: 1 of 3 axes needed
    assert out["pca.expl_var.cov_x"] == pytest.approx(1 / 3)
    assert out["pca.expl_var_PC1.cov_x"] == pytest.approx(1.0, abs=1e-9)


def test_pca_correlation_ignores_column_scale():
    rng = np.random.default_rng(11)
    points = rng.normal(0, 1, (400, 3))
    values = rng.normal(0, 1, 400)
    scaled = points.copy()
    scaled[:, 0] *= 1e6
    base = pca_features(points, values)
    big = pca_features(scaled, values)
    # covariance PCA collapses onto the scaled axis; correlation PCA does not
    assert big["pca.expl_var_PC1.cov_x"] == pytest.approx(1.0, abs=1e-6)
    assert big["pca.expl_var_PC1.cor_x"] == pytest.approx(
        base["pca.expl_var_PC1.cor_x"], abs=1e-6
    )


def test_pca_constant_sample_nan():
    points = np.ones((50, 3))
    values = np.ones(50)
    out = pca_features(points, values)
    assert math.isnan(out["pca.expl_var.cor_x"])


def test_ela_features_shape_validation():
    with pytest.raises(ValueError):
        ela_features(np.zeros((10, 2)), np.zeros(9))
    with pytest.raises(ValueError):
        ela_features(np.zeros(10), np.zeros(10))


def test_keep_mask_drops_nan_and_constant():
    rng = np.random.default_rng(12)
    table = rng.normal(0, 1, (20, 5))
    table[3, 1] = np.nan  # any NaN removes the column
    table[:, 4] = 2.5  # constant among clean columns
    keep = feature_keep_mask(table)
    np.testing.assert_array_equal(keep, [True, False, True, True, False])


def _as_table(values):
    from dynamorep.features import FeatureTable

    n = len(values)
    names = tuple(f"c{j}" for j in range(values.shape[1]))
    return FeatureTable(
        algorithm="DE",
        feature_names=names,
        problem_ids=np.repeat(np.arange(1, n + 1), 1),
        instance_ids=np.ones(n, dtype=int),
        seeds=np.zeros(n, dtype=int),
        values=np.asarray(values, dtype=float),
    )


def test_eliminate_features_round_trip():
    rng = np.random.default_rng(13)
    values = rng.normal(0, 1, (20, 4))
    values[0, 2] = np.nan
    reduced, mask = eliminate_features(_as_table(values))
    assert reduced.values.shape == (20, 3)
    assert np.isfinite(reduced.values).all()
    np.testing.assert_array_equal(mask, [True, True, False, True])
    # idempotent on the surviving columns
    again, mask2 = eliminate_features(reduced)
    np.testing.assert_array_equal(again.values, reduced.values)
    assert mask2.all()


def test_eliminate_everything_errors():
    with pytest.raises(ValueError):
        eliminate_features(_as_table(np.full((10, 3), np.nan)))
