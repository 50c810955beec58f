"""Differential evolution, DE/rand/1/bin."""

import numpy as np

F = 0.5
CR = 0.3


def evolve(x0, y0, rng, generations, evaluate):
    """Run DE from the evaluated population (x0, y0).

    Yields one (population, fitness) snapshot per generation, taken after
    one-to-one selection. Per generation the stream is consumed in a fixed
    order: base/difference indices in vectorized rejection rounds, then the
    crossover mask uniforms, then the forced-crossover coordinates.
    """
    lam, d = x0.shape
    x = x0.copy()
    y = y0.copy()
    for gen in range(1, generations + 1):
        idx = rng.integers(0, lam, size=(lam, 3))
        own = np.arange(lam)
        while True:
            bad = (
                (idx[:, 0] == idx[:, 1])
                | (idx[:, 0] == idx[:, 2])
                | (idx[:, 1] == idx[:, 2])
                | (idx == own[:, None]).any(axis=1)
            )
            if not bad.any():
                break
            idx[bad] = rng.integers(0, lam, size=(int(bad.sum()), 3))

        cross = rng.random((lam, d)) < CR
        jrand = rng.integers(0, d, size=lam)
        cross[own, jrand] = True

        mutant = x[idx[:, 0]] + F * (x[idx[:, 1]] - x[idx[:, 2]])
        trial = np.where(cross, mutant, x)
        np.clip(trial, -5.0, 5.0, out=trial)
        y_trial = evaluate(trial, gen)

        accept = y_trial <= y
        x[accept] = trial[accept]
        y[accept] = y_trial[accept]
        yield x.copy(), y.copy()
