"""Experiment configuration: defaults, JSON loading, flag overrides, hashing.

The configuration hash identifies the science parameters of an experiment:
fields that change the bytes of any produced artifact. Scope selectors
(which algorithms, which feature kind, which settings) and plumbing fields
(output directory, worker count) are excluded, so partial runs of the same
experiment share one hash and can resume each other's outputs.
"""

import hashlib
import json
from dataclasses import dataclass, fields, replace

from .. import __version__
from ..optimizers import ALGORITHMS

FEATURE_KINDS = ("dynamorep", "ela")
SETTINGS = (1, 2)

# fields whose values determine artifact bytes, in hash order
_HASHED_FIELDS = (
    "dimension",
    "instances",
    "seeds",
    "iterations",
    "population",
    "forest_seed",
)


@dataclass(frozen=True)
class ExperimentConfig:
    dimension: int = 3
    instances: int = 100
    seeds: tuple = (0, 1, 2, 3, 4)
    algorithms: tuple = ALGORITHMS
    iterations: int = 30
    population: int = 30
    feature_kind: str = "dynamorep"
    settings: tuple = SETTINGS
    forest_seed: int = 0
    output_dir: str = "out"
    workers: int = 1

    def __post_init__(self):
        for name in ("dimension", "instances", "iterations", "population"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be positive")
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not self.seeds or len(set(self.seeds)) != len(self.seeds):
            raise ValueError("seeds must be non-empty and distinct")
        if any(s < 0 for s in self.seeds):
            raise ValueError("seeds must be non-negative")
        if not self.algorithms:
            raise ValueError("algorithms must be non-empty")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(
                f"unknown algorithms {unknown}; choose from {list(ALGORITHMS)}"
            )
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ValueError("algorithms must be distinct")
        if self.feature_kind not in FEATURE_KINDS:
            raise ValueError(
                f"feature_kind must be one of {list(FEATURE_KINDS)}"
            )
        if not self.settings or any(s not in SETTINGS for s in self.settings):
            raise ValueError("settings must be a non-empty subset of {1, 2}")
        if len(set(self.settings)) != len(self.settings):
            raise ValueError("settings must be distinct")

    @property
    def config_hash(self):
        payload = {name: getattr(self, name) for name in _HASHED_FIELDS}
        payload["version"] = __version__
        canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]

    @property
    def stamp(self):
        return f"config={self.config_hash} version={__version__}"

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _coerce(name, value):
    """Normalize one JSON or flag value to the dataclass field type."""
    if name in ("seeds", "settings"):
        if isinstance(value, str):
            value = [v for v in value.split(",") if v != ""]
        return tuple(int(v) for v in value)
    if name == "algorithms":
        if isinstance(value, str):
            value = [v for v in value.split(",") if v != ""]
        return tuple(str(v) for v in value)
    if name in ("feature_kind", "output_dir"):
        return str(value)
    return int(value)


def load_config(path=None, overrides=None):
    """Defaults, then the JSON file at ``path``, then flag ``overrides``."""
    known = {f.name for f in fields(ExperimentConfig)}
    config = ExperimentConfig()
    if path is not None:
        with open(path) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise ValueError(f"{path}: config file must hold a JSON object")
        bad = sorted(set(loaded) - known)
        if bad:
            raise ValueError(f"{path}: unknown config keys {bad}")
        config = replace(
            config, **{k: _coerce(k, v) for k, v in loaded.items()}
        )
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in known:
            raise ValueError(f"unknown config override {key!r}")
        config = replace(config, **{key: _coerce(key, value)})
    return config
