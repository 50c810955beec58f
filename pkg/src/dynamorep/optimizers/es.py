"""(mu + lambda) evolution strategy with self-adaptive step sizes."""

import numpy as np

MU_FRACTION = 2  # mu = population // 2
SIGMA_INIT = 2.5
SIGMA_MIN = 1e-10
SIGMA_MAX = 5.0


def evolve(x0, y0, rng, generations, evaluate):
    """Run the ES from the evaluated population (x0, y0).

    Parents are the best half of the initial population. Each offspring
    mutates a uniformly chosen parent: the per-coordinate step sizes are
    scaled log-normally with a shared global factor and per-coordinate
    factors, then the coordinates move by gaussian steps. Survivors are the
    best mu of parents plus offspring, parents ranked first on ties.

    Yields one (offspring, fitness) snapshot per generation. Per generation
    the stream order is: parent indices, global step factors, per-coordinate
    step factors, coordinate steps.
    """
    lam, d = x0.shape
    mu = lam // MU_FRACTION
    tau_global = 1.0 / np.sqrt(2.0 * d)
    tau_coord = 1.0 / np.sqrt(2.0 * np.sqrt(d))

    order = np.argsort(y0, kind="stable")[:mu]
    parents = x0[order].copy()
    parent_y = y0[order].copy()
    parent_sigma = np.full((mu, d), SIGMA_INIT)

    for gen in range(1, generations + 1):
        pick = rng.integers(0, mu, size=lam)
        global_step = rng.standard_normal(lam)
        coord_step = rng.standard_normal((lam, d))
        move = rng.standard_normal((lam, d))

        sigma = parent_sigma[pick] * np.exp(
            tau_global * global_step[:, None] + tau_coord * coord_step
        )
        np.clip(sigma, SIGMA_MIN, SIGMA_MAX, out=sigma)
        offspring = parents[pick] + sigma * move
        np.clip(offspring, -5.0, 5.0, out=offspring)
        y_off = evaluate(offspring, gen)
        yield offspring.copy(), y_off.copy()

        pool_x = np.concatenate([parents, offspring])
        pool_y = np.concatenate([parent_y, y_off])
        pool_sigma = np.concatenate([parent_sigma, sigma])
        keep = np.argsort(pool_y, kind="stable")[:mu]
        parents = pool_x[keep].copy()
        parent_y = pool_y[keep].copy()
        parent_sigma = pool_sigma[keep].copy()
