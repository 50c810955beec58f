"""Real-coded genetic algorithm.

Binary tournament selection, simulated binary crossover, polynomial
mutation, generational replacement with a single-elite carryover.
"""

import numpy as np

P_CROSSOVER = 0.9
P_GENE_EXCHANGE = 0.5
ETA_CROSSOVER = 15.0
ETA_MUTATION = 20.0
LOWER = -5.0
UPPER = 5.0


def _sbx_children(p1, p2, apply_mask, u):
    eta = ETA_CROSSOVER
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)),
    )
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    c1 = np.where(apply_mask, c1, p1)
    c2 = np.where(apply_mask, c2, p2)
    return c1, c2


def _polynomial_mutation(x, apply_mask, u):
    eta = ETA_MUTATION
    span = UPPER - LOWER
    d1 = (x - LOWER) / span
    d2 = (UPPER - x) / span
    low_branch = (
        2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
    ) ** (1.0 / (eta + 1.0)) - 1.0
    high_branch = 1.0 - (
        2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
    ) ** (1.0 / (eta + 1.0))
    delta = np.where(u < 0.5, low_branch, high_branch)
    return np.where(apply_mask, x + delta * span, x)


def evolve(x0, y0, rng, generations, evaluate):
    """Run the GA from the evaluated population (x0, y0).

    Yields one (population, fitness) snapshot per generation: the evaluated
    offspring, with the previous best individual swapped in for the worst
    offspring when it beats the best offspring. Per generation the stream
    is consumed in a fixed order, all draws unconditional: tournament
    indices, pair crossover uniforms, gene exchange uniforms, crossover
    betas, mutation gate uniforms, mutation shape uniforms.
    """
    lam, d = x0.shape
    # odd lam: the last pair's second child is dropped at interleave
    n_pairs = (lam + 1) // 2
    x = x0.copy()
    y = y0.copy()
    for gen in range(1, generations + 1):
        tournament = rng.integers(0, lam, size=(n_pairs, 2, 2))
        pair_u = rng.random(n_pairs)
        gene_u = rng.random((n_pairs, d))
        beta_u = rng.random((n_pairs, d))
        mut_gate_u = rng.random((lam, d))
        mut_shape_u = rng.random((lam, d))

        a = tournament[:, :, 0]
        b = tournament[:, :, 1]
        winners = np.where(y[a] <= y[b], a, b)
        p1 = x[winners[:, 0]]
        p2 = x[winners[:, 1]]

        apply_mask = (pair_u < P_CROSSOVER)[:, None] & (gene_u < P_GENE_EXCHANGE)
        c1, c2 = _sbx_children(p1, p2, apply_mask, beta_u)
        offspring = np.empty((lam, d), dtype=np.float64)
        offspring[0::2] = c1[: (lam + 1) // 2]
        offspring[1::2] = c2[: lam // 2]
        np.clip(offspring, LOWER, UPPER, out=offspring)

        offspring = _polynomial_mutation(
            offspring, mut_gate_u < 1.0 / d, mut_shape_u
        )
        np.clip(offspring, LOWER, UPPER, out=offspring)
        y_off = evaluate(offspring, gen)

        best = int(np.argmin(y))
        if y[best] < y_off.min():
            worst = int(np.argmax(y_off))
            offspring[worst] = x[best]
            y_off[worst] = y[best]

        x = offspring
        y = y_off
        yield x.copy(), y.copy()
