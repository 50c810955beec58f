"""Numeric kernel dispatch.

Exports ``trajectory_stats`` and ``build_tree`` from the compiled extension
when it is importable, falling back to the numpy implementations otherwise.
``DYNAMOREP_BACKEND`` overrides the choice: ``auto`` (default), ``compiled``
(raise if the extension is missing), or ``python``.

Trees built by the two backends are bit-identical; trajectory statistics
agree to summation order (~1e-13). Seed-derivation helpers (``mix64``,
``tree_seed``) are pure bookkeeping and always come from the fallback.
"""

import os

from . import _pyfallback
from ._pyfallback import GOLDEN, mix64, tree_seed

_choice = os.environ.get("DYNAMOREP_BACKEND", "auto").lower()
if _choice not in ("auto", "compiled", "python"):
    raise ValueError(
        f"DYNAMOREP_BACKEND={_choice!r} not one of auto, compiled, python"
    )

if _choice == "python":
    _impl = _pyfallback
else:
    try:
        from . import _compiled as _impl
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _pyfallback

BACKEND = _impl.BACKEND
trajectory_stats = _impl.trajectory_stats
build_tree = _impl.build_tree

__all__ = [
    "BACKEND",
    "GOLDEN",
    "build_tree",
    "mix64",
    "trajectory_stats",
    "tree_seed",
]
