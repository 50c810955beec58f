import numpy as np
import pytest

from dynamorep.forest import RandomForestClassifier


def blobs(n_per_class=60, n_classes=3, d=5, spread=0.3, seed=0):
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-10, 10, (n_classes, d))
    X = np.vstack(
        [centers[c] + rng.normal(0, spread, (n_per_class, d))
         for c in range(n_classes)]
    )
    y = np.repeat(np.arange(n_classes), n_per_class)
    return X, y


def test_separable_blobs_training_accuracy_one():
    X, y = blobs()
    model = RandomForestClassifier(seed=0).fit(X, y)
    assert np.mean(model.predict(X) == y) == 1.0


def test_xor_layout():
    rng = np.random.default_rng(1)
    X = rng.uniform(-1, 1, (400, 2))
    y = ((X[:, 0] > 0) ^ (X[:, 1] > 0)).astype(int)
    model = RandomForestClassifier(seed=0).fit(X, y)
    assert np.mean(model.predict(X) == y) >= 0.95


def test_single_informative_feature_dominates_importance():
    """One margin-separated column among noise captures >= 0.9 importance."""
    rng = np.random.default_rng(2)
    n, p = 1000, 10
    X = rng.normal(0, 1, (n, p))
    y = (rng.random(n) < 0.5).astype(int)
    X[:, 4] = np.where(y == 1, rng.uniform(1.0, 2.0, n), rng.uniform(-2.0, -1.0, n))
    model = RandomForestClassifier(seed=0).fit(X, y)
    imp = model.feature_importances_
    assert imp[4] >= 0.9
    assert imp.sum() == pytest.approx(1.0, abs=1e-12)


def test_importances_normalized_and_nonnegative():
    X, y = blobs(seed=3)
    model = RandomForestClassifier(seed=1).fit(X, y)
    imp = model.feature_importances_
    assert np.all(imp >= 0)
    assert imp.sum() == pytest.approx(1.0, abs=1e-12)


def test_constant_label_zero_importances():
    rng = np.random.default_rng(4)
    X = rng.normal(0, 1, (50, 4))
    y = np.full(50, 7)
    model = RandomForestClassifier(seed=0).fit(X, y)
    np.testing.assert_array_equal(model.predict(X), np.full(50, 7))
    np.testing.assert_array_equal(model.feature_importances_, np.zeros(4))


def test_fit_deterministic_given_seed():
    X, y = blobs(seed=5)
    a = RandomForestClassifier(seed=9).fit(X, y)
    b = RandomForestClassifier(seed=9).fit(X, y)
    X_test = np.random.default_rng(6).normal(0, 5, (40, X.shape[1]))
    np.testing.assert_array_equal(a.predict(X_test), b.predict(X_test))
    np.testing.assert_array_equal(
        a.feature_importances_, b.feature_importances_
    )


def test_different_seed_different_forest():
    X, y = blobs(seed=5, spread=6.0)
    a = RandomForestClassifier(seed=0).fit(X, y)
    b = RandomForestClassifier(seed=1).fit(X, y)
    assert not np.array_equal(a.feature_importances_, b.feature_importances_)


def test_vote_counts_sum_to_tree_count():
    X, y = blobs(seed=7)
    model = RandomForestClassifier(n_trees=50, seed=0).fit(X, y)
    counts = model.predict_counts(X[:10])
    assert counts.shape == (10, len(model.classes_))
    np.testing.assert_array_equal(counts.sum(axis=1), np.full(10, 50))


def test_vote_tie_prefers_lower_class_label():
    # two identical rows with opposite labels: every tree sees a pure-leaf
    # coin flip, and argmax resolves equal votes to the first class
    X = np.zeros((2, 3))
    y = np.array([7, 3])
    model = RandomForestClassifier(n_trees=2, seed=0).fit(X, y)
    counts = model.predict_counts(np.zeros((1, 3)))
    if counts[0, 0] == counts[0, 1]:
        assert model.predict(np.zeros((1, 3)))[0] == 3


def test_class_labels_arbitrary_ints():
    X, y = blobs(n_classes=3, seed=8)
    labels = np.array([5, 17, 40])[y]
    model = RandomForestClassifier(seed=0).fit(X, labels)
    np.testing.assert_array_equal(model.classes_, [5, 17, 40])
    assert set(model.predict(X)) <= {5, 17, 40}


def test_column_count_mismatch_rejected():
    X, y = blobs(seed=9)
    model = RandomForestClassifier(seed=0).fit(X, y)
    with pytest.raises(ValueError):
        model.predict(X[:, :3])


def test_nan_training_rejected():
    X, y = blobs(seed=10)
    X[0, 0] = np.nan
    with pytest.raises(ValueError, match="NaN or infinity"):
        RandomForestClassifier(seed=0).fit(X, y)


def test_unfitted_predict_rejected():
    with pytest.raises(RuntimeError):
        RandomForestClassifier().predict(np.zeros((1, 2)))


def test_row_permutation_invariance():
    """Fitting on permuted rows yields a different forest, but fitting and
    predicting stay consistent; predicting permuted rows permutes output."""
    X, y = blobs(seed=11)
    model = RandomForestClassifier(seed=0).fit(X, y)
    perm = np.random.default_rng(12).permutation(len(X))
    np.testing.assert_array_equal(model.predict(X[perm]), model.predict(X)[perm])


def test_feature_count_recorded():
    X, y = blobs(seed=13)
    model = RandomForestClassifier(seed=0).fit(X, y)
    assert model.n_features_ == X.shape[1]
    assert len(model.trees_) == 100
