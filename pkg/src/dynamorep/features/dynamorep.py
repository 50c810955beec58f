"""Trajectory descriptors from per-iteration population statistics.

Each logged iteration contributes four statistics (min, max, mean,
population std) of every coordinate column and of the fitness column, in
that order. Concatenated over iterations this gives a vector of length
``iterations * 4 * (dimension + 1)`` whose layout is stable and named.
"""

import numpy as np

from .._kernels import trajectory_stats

STATISTICS = ("min", "max", "mean", "std")


def iteration_stats(points, values):
    """Statistics of one population: a (4, dimension + 1) array.

    Rows are min, max, mean, population std; columns are the point
    coordinates followed by the fitness.
    """
    points = np.asarray(points, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if points.ndim != 2 or values.shape != (points.shape[0],):
        raise ValueError(
            f"expected (rows, d) points with matching values, got "
            f"{points.shape} and {values.shape}"
        )
    xy = np.column_stack([points, values])
    return trajectory_stats(xy, points.shape[0])[0]


def trajectory_features(trajectory):
    """Flat descriptor of one trajectory.

    Iteration-major; within an iteration the four statistic blocks appear
    min, max, mean, std, each covering x0 .. x{d-1} then y.
    """
    xy = np.column_stack([trajectory.x, trajectory.y])
    stats = trajectory_stats(xy, trajectory.population)
    return stats.reshape(-1)


def feature_names(dimension, iterations):
    """Names aligned with ``trajectory_features`` output order."""
    components = [f"x{j}" for j in range(dimension)] + ["y"]
    return [
        f"it{t}_{stat}_{comp}"
        for t in range(iterations)
        for stat in STATISTICS
        for comp in components
    ]
