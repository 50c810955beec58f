"""Latin hypercube sampling for initial populations."""

import numpy as np


def latin_hypercube(rng, population, dimension, lower=-5.0, upper=5.0):
    """Sample ``population`` points stratified per dimension.

    Each dimension is split into ``population`` equal cells; every cell
    contains exactly one point. Per dimension the draw order is fixed:
    a cell permutation first, then the within-cell uniforms.
    """
    x = np.empty((population, dimension), dtype=np.float64)
    width = upper - lower
    for j in range(dimension):
        cells = rng.permutation(population)
        u = rng.random(population)
        x[:, j] = lower + width * (cells + u) / population
    return x
