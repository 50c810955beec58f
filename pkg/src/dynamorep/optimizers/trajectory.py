"""Trajectory container and CSV round-trip.

A trajectory stacks every evaluated population of one run in iteration
order: rows ``t*population .. (t+1)*population - 1`` hold iteration ``t``.
CSV files store one row per individual with shortest round-trip float
formatting, so write -> read -> write is byte-stable.
"""

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Trajectory:
    algorithm: str
    problem_id: int
    instance_id: int
    seed: int
    dimension: int
    population: int
    iterations: int
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        rows = self.iterations * self.population
        if self.x.shape != (rows, self.dimension):
            raise ValueError(
                f"x has shape {self.x.shape}, expected {(rows, self.dimension)}"
            )
        if self.y.shape != (rows,):
            raise ValueError(f"y has shape {self.y.shape}, expected {(rows,)}")

    def iteration(self, t):
        """(x, y) of iteration ``t``."""
        block = slice(t * self.population, (t + 1) * self.population)
        return self.x[block], self.y[block]


def trajectory_header(dimension):
    coords = [f"x{j}" for j in range(dimension)]
    return (
        ["algorithm", "problem_id", "instance_id", "seed", "iteration", "individual"]
        + coords
        + ["y"]
    )


def write_trajectory_csv(path, trajectory, stamp=None):
    """Write one trajectory, optionally preceded by a ``# <stamp>`` line."""
    with open(path, "w", newline="") as fh:
        if stamp is not None:
            fh.write(f"# {stamp}\n")
        writer = csv.writer(fh)
        writer.writerow(trajectory_header(trajectory.dimension))
        ident = [
            trajectory.algorithm,
            trajectory.problem_id,
            trajectory.instance_id,
            trajectory.seed,
        ]
        row_id = 0
        for t in range(trajectory.iterations):
            for i in range(trajectory.population):
                coords = [repr(float(v)) for v in trajectory.x[row_id]]
                writer.writerow(
                    ident + [t, i] + coords + [repr(float(trajectory.y[row_id]))]
                )
                row_id += 1


def read_trajectory_csv(path):
    """Read a trajectory written by ``write_trajectory_csv``."""
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise ValueError(f"{path}: empty trajectory file")
    header = rows[0]
    dimension = len(header) - 7
    if dimension < 1 or header != trajectory_header(dimension):
        raise ValueError(f"{path}: unrecognized header {header!r}")

    body = rows[1:]
    if not body:
        raise ValueError(f"{path}: no data rows")
    first = body[0]
    algorithm = first[0]
    problem_id, instance_id, seed = int(first[1]), int(first[2]), int(first[3])

    x = np.empty((len(body), dimension), dtype=np.float64)
    y = np.empty(len(body), dtype=np.float64)
    expected_iter = np.empty(len(body), dtype=np.int64)
    expected_ind = np.empty(len(body), dtype=np.int64)
    for k, row in enumerate(body):
        if (row[0], int(row[1]), int(row[2]), int(row[3])) != (
            algorithm,
            problem_id,
            instance_id,
            seed,
        ):
            raise ValueError(f"{path}: mixed run identities in one file")
        expected_iter[k] = int(row[4])
        expected_ind[k] = int(row[5])
        x[k] = [float(v) for v in row[6 : 6 + dimension]]
        y[k] = float(row[6 + dimension])

    population = int(expected_ind.max()) + 1
    iterations = int(expected_iter.max()) + 1
    if len(body) != population * iterations:
        raise ValueError(
            f"{path}: {len(body)} rows inconsistent with "
            f"{iterations} iterations x {population} individuals"
        )
    order = np.lexsort((expected_ind, expected_iter))
    if not (
        np.array_equal(expected_iter[order], np.repeat(np.arange(iterations), population))
        and np.array_equal(
            expected_ind[order], np.tile(np.arange(population), iterations)
        )
    ):
        raise ValueError(f"{path}: rows do not form a full iteration grid")
    return Trajectory(
        algorithm=algorithm,
        problem_id=problem_id,
        instance_id=instance_id,
        seed=seed,
        dimension=dimension,
        population=population,
        iterations=iterations,
        x=x[order],
        y=y[order],
    )
