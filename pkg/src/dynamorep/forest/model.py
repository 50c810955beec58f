"""Random forest classifier over the CART tree kernels.

Bagged gini trees with sqrt-of-features subsampling at every node. All
randomness flows through the stateless per-tree draw streams, so a fit is
reproducible from (data, seed) alone, independent of backend.
"""

import math

import numpy as np

from .._kernels import build_tree, tree_seed


class RandomForestClassifier:
    """100-tree bagged CART ensemble with mean-decrease-in-gini importances."""

    def __init__(self, n_trees=100, min_samples_split=2, seed=0):
        if n_trees < 1:
            raise ValueError("n_trees must be positive")
        self.n_trees = n_trees
        self.min_samples_split = min_samples_split
        self.seed = seed
        self.classes_ = None
        self.trees_ = None
        self.n_features_ = None
        self._importances = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValueError(f"X must be a non-empty 2d array, got {X.shape}")
        if y.shape != (X.shape[0],):
            raise ValueError(
                f"y shape {y.shape} does not match {X.shape[0]} rows"
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("training features contain NaN or infinity")

        self.classes_, encoded = np.unique(y, return_inverse=True)
        encoded = encoded.astype(np.int32)
        n_classes = len(self.classes_)
        self.n_features_ = X.shape[1]
        q = math.ceil(math.sqrt(X.shape[1]))
        # Fortran order: the tree builder gathers one feature column at a time
        xf = np.asfortranarray(X)

        self.trees_ = [
            build_tree(
                xf, encoded, n_classes, q, self.min_samples_split,
                tree_seed(self.seed, t),
            )
            for t in range(self.n_trees)
        ]

        raw = np.mean([t["importances"] for t in self.trees_], axis=0)
        total = raw.sum()
        self._importances = raw / total if total > 0.0 else raw
        return self

    def _check_fitted(self):
        if self.trees_ is None:
            raise RuntimeError("fit the model before using it")

    @property
    def feature_importances_(self):
        """Mean decrease in gini, normalized to sum 1 when any split exists."""
        self._check_fitted()
        return self._importances

    def predict_counts(self, X):
        """Per-class tree vote counts, columns aligned with ``classes_``."""
        self._check_fitted()
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features_:
            raise ValueError(
                f"X must have shape (rows, {self.n_features_}), got {X.shape}"
            )
        votes = np.zeros((X.shape[0], len(self.classes_)), dtype=np.int64)
        rows = np.arange(X.shape[0])
        for tree in self.trees_:
            votes[rows, _apply_tree(tree, X)] += 1
        return votes

    def predict(self, X):
        """Majority vote over trees; vote ties go to the smallest class."""
        return self.classes_[np.argmax(self.predict_counts(X), axis=1)]


def _apply_tree(tree, X):
    """Leaf class index for every row, by synchronized level descent."""
    feature = tree["feature"]
    threshold = tree["threshold"]
    left = tree["left"]
    right = tree["right"]
    node = np.zeros(X.shape[0], dtype=np.int32)
    active = np.where(feature[node] >= 0)[0]
    while active.size:
        current = node[active]
        goes_left = X[active, feature[current]] <= threshold[current]
        node[active] = np.where(goes_left, left[current], right[current])
        active = active[feature[node[active]] >= 0]
    return tree["leaf_class"][node]
