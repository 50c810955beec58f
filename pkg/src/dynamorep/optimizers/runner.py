"""Run one optimizer on one problem instance, logging every evaluation."""

import numpy as np

from ..bbob.functions import evaluate_batch
from . import cmaes, de, es, ga
from .lhs import latin_hypercube
from .rng import evolution_rng, init_rng
from .trajectory import Trajectory

POPULATION = 30
ITERATIONS = 30

_EVOLVERS = {
    "DE": de.evolve,
    "GA": ga.evolve,
    "ES": es.evolve,
    "CMAES": cmaes.evolve,
}

ALGORITHMS = tuple(_EVOLVERS)


def run_trajectory(algorithm, instance, seed, population=POPULATION,
                   iterations=ITERATIONS):
    """Run ``algorithm`` on ``instance`` and return the full trajectory.

    Iteration 0 is the evaluated latin hypercube population, drawn from a
    stream keyed by the seed alone; iterations 1 .. iterations-1 come from
    the algorithm's own evolution loop. Exactly population * iterations
    points are evaluated. Any non-finite fitness aborts the run.
    """
    if algorithm not in _EVOLVERS:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; choose from {sorted(_EVOLVERS)}"
        )
    if iterations < 1:
        raise ValueError("iterations must be positive")

    def checked_evaluate(points, iteration):
        values = evaluate_batch(instance, points)
        if not np.all(np.isfinite(values)):
            raise RuntimeError(
                f"non-finite fitness: algorithm={algorithm} "
                f"problem={instance.problem_id} "
                f"instance={instance.instance_id} seed={seed} "
                f"iteration={iteration}"
            )
        return values

    x0 = latin_hypercube(init_rng(seed), population, instance.dimension)
    y0 = checked_evaluate(x0, 0)

    xs = [x0]
    ys = [y0]
    if iterations > 1:
        rng = evolution_rng(
            algorithm, instance.problem_id, instance.instance_id, seed
        )
        evolver = _EVOLVERS[algorithm](
            x0, y0, rng, iterations - 1, checked_evaluate
        )
        for x_t, y_t in evolver:
            xs.append(x_t)
            ys.append(y_t)

    return Trajectory(
        algorithm=algorithm,
        problem_id=instance.problem_id,
        instance_id=instance.instance_id,
        seed=seed,
        dimension=instance.dimension,
        population=population,
        iterations=iterations,
        x=np.concatenate(xs, axis=0),
        y=np.concatenate(ys, axis=0),
    )
