"""The 24 BBOB function classes with seeded, deterministic instances."""

from .functions import evaluate, evaluate_batch
from .instance import (
    N_PROBLEMS,
    SIGN_PATTERN_CLASSES,
    ProblemInstance,
    SearchDomain,
    make_instance,
    true_optimum,
)
from .manifest import manifest_header, write_manifest
from .transforms import f_pen, lambda_scaling, t_asy, t_osz

__all__ = [
    "N_PROBLEMS",
    "SIGN_PATTERN_CLASSES",
    "ProblemInstance",
    "SearchDomain",
    "make_instance",
    "true_optimum",
    "evaluate",
    "evaluate_batch",
    "manifest_header",
    "write_manifest",
    "f_pen",
    "lambda_scaling",
    "t_asy",
    "t_osz",
]
