"""The two seed-generalization evaluation settings.

Both settings run stratified k-fold cross-validation over instance ids
and train one forest per fold:

- setting one trains on a single seed's runs and measures how the model
  transfers to the remaining seeds on held-out instances;
- setting two trains on every seed but one and measures transfer to the
  held-out seed on held-out instances.
"""

import numpy as np

from ..ela import feature_keep_mask
from ..forest import RandomForestClassifier
from .folds import stratified_folds
from .reports import EvaluationReport, FoldEvaluation, accuracy, confusion

SEEDS = (0, 1, 2, 3, 4)


def _validate_table(table):
    triples = list(
        zip(table.problem_ids.tolist(), table.instance_ids.tolist(),
            table.seeds.tolist())
    )
    if len(set(triples)) != len(triples):
        raise ValueError("feature table has duplicate (problem, instance, seed) keys")
    if table.problem_ids.min() < 1 or table.problem_ids.max() > 24:
        raise ValueError("problem ids must lie in 1..24")
    instances = np.unique(table.instance_ids)
    expected = np.arange(1, len(instances) + 1)
    if not np.array_equal(instances, expected):
        raise ValueError("instance ids must be contiguous from 1")
    return int(instances[-1])


def _fit_fold(table, train_mask, eliminate, forest_seed):
    """Forest plus full-width importances for one fold's training rows."""
    train = table.select(train_mask)
    keep = np.ones(len(table.feature_names), dtype=bool)
    if eliminate:
        keep = feature_keep_mask(train.values)
        train = train.with_features(keep)
    model = RandomForestClassifier(seed=forest_seed).fit(
        train.values, train.problem_ids
    )
    importances = np.full(len(table.feature_names), np.nan)
    importances[keep] = model.feature_importances_
    return model, keep, importances


def _evaluate(model, table, mask, keep):
    rows = table.select(mask)
    predictions = model.predict(rows.values[:, keep])
    return predictions, rows.problem_ids


def setting_one(table, train_seed, *, k=10, forest_seed=0, eliminate=False,
                feature_kind="dynamorep"):
    """Train per fold on one seed; evaluate each seed's held-out fold.

    The train seed's own evaluation is recorded but flagged out of the
    generalization aggregate and the confusion sum.
    """
    n_instances = _validate_table(table)
    plan = stratified_folds(n_instances, k)
    seeds = sorted(np.unique(table.seeds).tolist())
    if train_seed not in seeds:
        raise ValueError(f"train seed {train_seed} has no rows")

    per_fold = []
    conf = np.zeros((24, 24), dtype=np.int64)
    importances = []
    for fold in range(plan.k):
        in_fold = np.isin(table.instance_ids, list(plan.test_ids(fold)))
        train_mask = (table.seeds == train_seed) & ~in_fold
        model, keep, imp = _fit_fold(table, train_mask, eliminate, forest_seed)
        importances.append(imp)
        for eval_seed in seeds:
            test_mask = (table.seeds == eval_seed) & in_fold
            predictions, labels = _evaluate(model, table, test_mask, keep)
            generalization = eval_seed != train_seed
            if generalization:
                conf += confusion(predictions, labels)
            per_fold.append(
                FoldEvaluation(
                    fold=fold,
                    eval_seed=eval_seed,
                    n_train=int(train_mask.sum()),
                    n_test=len(labels),
                    accuracy=accuracy(predictions, labels),
                    generalization=generalization,
                )
            )
    return EvaluationReport(
        setting="setting_one",
        algorithm=table.algorithm,
        feature_kind=feature_kind,
        anchor_seed=train_seed,
        per_fold=tuple(per_fold),
        confusion=conf,
        feature_names=table.feature_names,
        importances=np.array(importances),
        forest_seed=forest_seed,
    )


def setting_two(table, test_seed, *, k=10, forest_seed=0, eliminate=False,
                feature_kind="dynamorep"):
    """Train per fold on all other seeds; evaluate the held-out seed."""
    n_instances = _validate_table(table)
    plan = stratified_folds(n_instances, k)
    seeds = sorted(np.unique(table.seeds).tolist())
    if test_seed not in seeds:
        raise ValueError(f"test seed {test_seed} has no rows")

    per_fold = []
    conf = np.zeros((24, 24), dtype=np.int64)
    importances = []
    for fold in range(plan.k):
        in_fold = np.isin(table.instance_ids, list(plan.test_ids(fold)))
        train_mask = (table.seeds != test_seed) & ~in_fold
        model, keep, imp = _fit_fold(table, train_mask, eliminate, forest_seed)
        importances.append(imp)
        test_mask = (table.seeds == test_seed) & in_fold
        predictions, labels = _evaluate(model, table, test_mask, keep)
        conf += confusion(predictions, labels)
        per_fold.append(
            FoldEvaluation(
                fold=fold,
                eval_seed=test_seed,
                n_train=int(train_mask.sum()),
                n_test=len(labels),
                accuracy=accuracy(predictions, labels),
                generalization=True,
            )
        )
    return EvaluationReport(
        setting="setting_two",
        algorithm=table.algorithm,
        feature_kind=feature_kind,
        anchor_seed=test_seed,
        per_fold=tuple(per_fold),
        confusion=conf,
        feature_names=table.feature_names,
        importances=np.array(importances),
        forest_seed=forest_seed,
    )
