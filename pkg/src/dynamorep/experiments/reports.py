"""Evaluation outcomes: accuracies, confusion, importances, summaries."""

from dataclasses import dataclass, field

import numpy as np

N_PROBLEM_CLASSES = 24


def accuracy(predictions, labels):
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    if predictions.shape != labels.shape:
        raise ValueError("predictions and labels differ in length")
    if len(labels) == 0:
        raise ValueError("cannot score an empty evaluation")
    return float(np.mean(predictions == labels))


def confusion(predictions, labels, n_classes=N_PROBLEM_CLASSES):
    """Count matrix with true classes as rows, predictions as columns.

    Class ids are 1-based; the diagonal is kept here and zeroed only in
    the reported form.
    """
    predictions = np.asarray(predictions, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    out = np.zeros((n_classes, n_classes), dtype=np.int64)
    np.add.at(out, (labels - 1, predictions - 1), 1)
    return out


def reported_confusion(matrix):
    """Errors-only convention: the diagonal is zeroed."""
    out = np.array(matrix, dtype=np.int64, copy=True)
    np.fill_diagonal(out, 0)
    return out


def summarize(values):
    values = np.asarray(values, dtype=np.float64)
    if len(values) == 0:
        raise ValueError("cannot summarize zero accuracies")
    return {
        "mean": float(values.mean()),
        "median": float(np.median(values)),
        "std": float(values.std()),
    }


@dataclass(frozen=True)
class FoldEvaluation:
    fold: int
    eval_seed: int
    n_train: int
    n_test: int
    accuracy: float
    generalization: bool


@dataclass(frozen=True)
class EvaluationReport:
    """Everything one (setting, algorithm, seed) evaluation produced.

    ``importances`` has one row per trained model (fold order); columns
    align with ``feature_names`` and are NaN where a feature was
    eliminated before training.
    """

    setting: str
    algorithm: str
    feature_kind: str
    anchor_seed: int
    per_fold: tuple
    confusion: np.ndarray
    feature_names: tuple
    importances: np.ndarray
    forest_seed: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def generalization_accuracies(self):
        return np.array(
            [f.accuracy for f in self.per_fold if f.generalization]
        )

    @property
    def summary(self):
        return summarize(self.generalization_accuracies)

    def to_dict(self):
        """JSON-ready form; non-finite importances become null."""
        imp = [
            [v if np.isfinite(v) else None for v in row]
            for row in self.importances.tolist()
        ]
        return {
            "setting": self.setting,
            "algorithm": self.algorithm,
            "feature_kind": self.feature_kind,
            "anchor_seed": self.anchor_seed,
            "forest_seed": self.forest_seed,
            "per_fold": [
                {
                    "fold": f.fold,
                    "eval_seed": f.eval_seed,
                    "n_train": f.n_train,
                    "n_test": f.n_test,
                    "accuracy": f.accuracy,
                    "generalization": f.generalization,
                }
                for f in self.per_fold
            ],
            "summary": self.summary,
            "confusion": reported_confusion(self.confusion).tolist(),
            "feature_names": list(self.feature_names),
            "importances": imp,
            **self.extra,
        }
