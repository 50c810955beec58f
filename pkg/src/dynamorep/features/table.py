"""Feature table container shared by all descriptor kinds.

One row per run, identified by (problem_id, instance_id, seed); rows are
kept in that sort order so downstream splits and CSV output are stable.
Missing feature values are NaN in memory and empty fields on disk.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

_ID_COLUMNS = ["algorithm", "problem_id", "instance_id", "seed"]


@dataclass(frozen=True)
class FeatureTable:
    algorithm: str
    feature_names: tuple
    problem_ids: np.ndarray
    instance_ids: np.ndarray
    seeds: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        rows = len(self.problem_ids)
        if self.values.shape != (rows, len(self.feature_names)):
            raise ValueError(
                f"values shape {self.values.shape} inconsistent with "
                f"{rows} rows x {len(self.feature_names)} features"
            )
        if len(self.instance_ids) != rows or len(self.seeds) != rows:
            raise ValueError("identity columns differ in length")

    @classmethod
    def from_rows(cls, algorithm, feature_names, rows):
        """Build from (problem_id, instance_id, seed, vector) tuples."""
        if not rows:
            raise ValueError("feature table needs at least one row")
        rows = sorted(rows, key=lambda r: (r[0], r[1], r[2]))
        problem_ids = np.array([r[0] for r in rows], dtype=np.int64)
        instance_ids = np.array([r[1] for r in rows], dtype=np.int64)
        seeds = np.array([r[2] for r in rows], dtype=np.int64)
        values = np.array([r[3] for r in rows], dtype=np.float64)
        return cls(
            algorithm=algorithm,
            feature_names=tuple(feature_names),
            problem_ids=problem_ids,
            instance_ids=instance_ids,
            seeds=seeds,
            values=values,
        )

    def select(self, mask):
        """Row subset, keeping order."""
        mask = np.asarray(mask)
        return FeatureTable(
            algorithm=self.algorithm,
            feature_names=self.feature_names,
            problem_ids=self.problem_ids[mask],
            instance_ids=self.instance_ids[mask],
            seeds=self.seeds[mask],
            values=self.values[mask],
        )

    def with_features(self, keep):
        """Column subset via a boolean keep mask."""
        keep = np.asarray(keep, dtype=bool)
        names = tuple(n for n, k in zip(self.feature_names, keep) if k)
        return FeatureTable(
            algorithm=self.algorithm,
            feature_names=names,
            problem_ids=self.problem_ids,
            instance_ids=self.instance_ids,
            seeds=self.seeds,
            values=self.values[:, keep],
        )


def _format_value(v):
    if math.isnan(v):
        return ""
    return repr(float(v))


def write_feature_csv(path, table, stamp=None):
    """Write one table, optionally preceded by a ``# <stamp>`` line."""
    with open(path, "w", newline="") as fh:
        if stamp is not None:
            fh.write(f"# {stamp}\n")
        writer = csv.writer(fh)
        writer.writerow(_ID_COLUMNS + list(table.feature_names))
        for k in range(len(table.problem_ids)):
            writer.writerow(
                [
                    table.algorithm,
                    int(table.problem_ids[k]),
                    int(table.instance_ids[k]),
                    int(table.seeds[k]),
                ]
                + [_format_value(v) for v in table.values[k]]
            )


def read_feature_csv(path):
    """Read a table written by ``write_feature_csv``."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if len(rows) < 2:
        raise ValueError(f"{path}: feature table needs a header and rows")
    header = rows[0]
    if header[: len(_ID_COLUMNS)] != _ID_COLUMNS:
        raise ValueError(f"{path}: unrecognized header start {header[:4]!r}")
    names = tuple(header[len(_ID_COLUMNS) :])
    algorithm = rows[1][0]
    parsed = []
    for row in rows[1:]:
        if row[0] != algorithm:
            raise ValueError(f"{path}: mixed algorithms in one table")
        vector = [float(v) if v != "" else math.nan for v in row[4:]]
        if len(vector) != len(names):
            raise ValueError(f"{path}: row width differs from header")
        parsed.append((int(row[1]), int(row[2]), int(row[3]), vector))
    return FeatureTable.from_rows(algorithm, names, parsed)
