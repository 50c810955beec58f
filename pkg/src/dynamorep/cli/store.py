"""Output tree layout, completeness validation, and atomic writes.

Layout under the configured output directory:

- ``trajectories/<ALGO>/f<pp>_i<iii>_s<seed>.csv``  one file per run
- ``features/<kind>_<ALGO>.csv``                    one table per algorithm
- ``reports/<kind>_<ALGO>_setting<n>_seed<k>.json`` one evaluation report
- ``report/``                                       plot-ready summaries
- ``timings.json``                                  wall-clock log per stage

Completeness is judged by structure (row counts, headers, parseable JSON
with a matching config hash), never by file age, so stages are idempotent
and a partial sweep can resume after a kill. Writers go through a
temporary file and an atomic rename so no reader ever sees a half-written
artifact.
"""

import json
import os
from pathlib import Path

from .. import __version__


def write_atomic(path, text):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


class OutputStore:
    def __init__(self, config):
        self.config = config
        self.root = Path(config.output_dir)

    # -- paths ---------------------------------------------------------

    def trajectory_path(self, algorithm, problem_id, instance_id, seed):
        return (
            self.root
            / "trajectories"
            / algorithm
            / f"f{problem_id:02d}_i{instance_id:03d}_s{seed}.csv"
        )

    def features_path(self, kind, algorithm):
        return self.root / "features" / f"{kind}_{algorithm}.csv"

    def report_path(self, kind, algorithm, setting, anchor_seed):
        name = f"{kind}_{algorithm}_setting{setting}_seed{anchor_seed}.json"
        return self.root / "reports" / name

    def summary_path(self, name):
        return self.root / "report" / name

    def timings_path(self):
        return self.root / "timings.json"

    def ensure_dirs(self, *paths):
        for p in paths:
            Path(p).mkdir(parents=True, exist_ok=True)

    # -- completeness --------------------------------------------------

    def trajectory_complete(self, path):
        """True when the file holds stamp, header, and every data row."""
        expected = 2 + self.config.population * self.config.iterations
        return self._line_count_matches(path, expected)

    def feature_table_complete(self, path, n_features):
        n_rows = 24 * self.config.instances * len(self.config.seeds)
        if not self._line_count_matches(path, 2 + n_rows):
            return False
        with open(path) as fh:
            fh.readline()  # stamp
            header = fh.readline().rstrip("\n").split(",")
        return len(header) == 4 + n_features

    def report_complete(self, path):
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            return False
        return (
            isinstance(doc, dict)
            and doc.get("config_hash") == self.config.config_hash
            and doc.get("version") == __version__
        )

    @staticmethod
    def _line_count_matches(path, expected):
        path = Path(path)
        if not path.is_file():
            return False
        count = 0
        last = b""
        with open(path, "rb") as fh:
            while True:
                chunk = fh.read(1 << 20)
                if not chunk:
                    break
                count += chunk.count(b"\n")
                last = chunk
        return count == expected and last.endswith(b"\n")

    # -- timings -------------------------------------------------------

    def record_timing(self, stage, seconds):
        path = self.timings_path()
        timings = {}
        if path.is_file():
            try:
                timings = json.loads(path.read_text())
            except ValueError:
                timings = {}
        timings[stage] = round(seconds, 3)
        timings["config_hash"] = self.config.config_hash
        write_atomic(path, json.dumps(timings, indent=2, sort_keys=True) + "\n")
