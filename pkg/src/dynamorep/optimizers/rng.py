"""Random-stream construction for optimizer runs.

Two separate streams keep the initial design shared while evolution stays
run-specific:

- the init stream is keyed by the seed alone, so every algorithm on every
  problem instance starts from the same latin hypercube sample for a given
  seed;
- the evolution stream is keyed by (algorithm, problem, instance, seed), so
  no two runs share mutation or selection randomness.
"""

from numpy.random import Generator, PCG64, SeedSequence

_INIT_TAG = 0x1A171A1
_EVOLUTION_TAG = 0xE7017107

ALGORITHM_IDS = {"DE": 1, "GA": 2, "ES": 3, "CMAES": 4}


def init_rng(seed):
    """Stream that draws the shared initial population for ``seed``."""
    return Generator(PCG64(SeedSequence([_INIT_TAG, int(seed)])))


def evolution_rng(algorithm, problem_id, instance_id, seed):
    """Stream that drives one run's evolution, disjoint per run."""
    algo_id = ALGORITHM_IDS[algorithm]
    return Generator(
        PCG64(
            SeedSequence(
                [_EVOLUTION_TAG, algo_id, int(problem_id), int(instance_id), int(seed)]
            )
        )
    )
