"""Cross-validation settings, fold plans, and report assembly."""

from .folds import FoldPlan, stratified_folds
from .importance import importance_report
from .reports import (
    EvaluationReport,
    FoldEvaluation,
    N_PROBLEM_CLASSES,
    accuracy,
    confusion,
    reported_confusion,
    summarize,
)
from .settings import SEEDS, setting_one, setting_two

__all__ = [
    "EvaluationReport",
    "FoldEvaluation",
    "FoldPlan",
    "N_PROBLEM_CLASSES",
    "SEEDS",
    "accuracy",
    "confusion",
    "importance_report",
    "reported_confusion",
    "setting_one",
    "setting_two",
    "stratified_folds",
    "summarize",
]
