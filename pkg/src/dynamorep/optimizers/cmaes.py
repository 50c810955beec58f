"""Covariance matrix adaptation evolution strategy.

Standard rank-one plus rank-mu update with cumulative step-size
adaptation. The distribution mean starts at the centroid of the initial
population and every update consumes the clipped, evaluated offspring, so
the new mean is exactly the weighted recombination of the logged points.
"""

import logging

import numpy as np

SIGMA_INIT = 2.0
EIGEN_FLOOR = 1e-14

logger = logging.getLogger(__name__)


def evolve(x0, y0, rng, generations, evaluate):
    """Run CMA-ES from the evaluated population (x0, y0).

    Yields one (offspring, fitness) snapshot per generation, in sample
    order, clipped to the search box. One standard-normal block of shape
    (population, dimension) is drawn per generation.
    """
    lam, d = x0.shape
    mu = lam // 2
    raw = np.log(mu + 0.5) - np.log(np.arange(1, mu + 1))
    weights = raw / raw.sum()
    mu_eff = 1.0 / np.sum(weights**2)

    c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0)
    d_sigma = (
        1.0
        + 2.0 * max(0.0, np.sqrt((mu_eff - 1.0) / (d + 1.0)) - 1.0)
        + c_sigma
    )
    c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d)
    c_1 = 2.0 / ((d + 1.3) ** 2 + mu_eff)
    c_mu = min(
        1.0 - c_1,
        2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) ** 2 + mu_eff),
    )
    chi_n = np.sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d**2))

    mean = x0.mean(axis=0)
    sigma = SIGMA_INIT
    cov = np.eye(d)
    p_sigma = np.zeros(d)
    p_c = np.zeros(d)

    for gen in range(1, generations + 1):
        eigvals, basis = np.linalg.eigh(cov)
        if eigvals.min() < EIGEN_FLOOR:
            logger.warning(
                "covariance eigenvalue %.3e below floor at generation %d; "
                "repairing",
                eigvals.min(),
                gen,
            )
            eigvals = np.maximum(eigvals, EIGEN_FLOOR)
        scale = np.sqrt(eigvals)

        z = rng.standard_normal((lam, d))
        offspring = mean + sigma * (z * scale) @ basis.T
        np.clip(offspring, -5.0, 5.0, out=offspring)
        y_off = evaluate(offspring, gen)
        yield offspring.copy(), y_off.copy()

        order = np.argsort(y_off, kind="stable")[:mu]
        selected = offspring[order]
        new_mean = weights @ selected
        y_w = (new_mean - mean) / sigma
        y_sel = (selected - mean) / sigma

        # C^(-1/2) v = B (B^T v / sqrt(eigvals))
        whitened = basis @ ((basis.T @ y_w) / scale)
        p_sigma = (1.0 - c_sigma) * p_sigma + np.sqrt(
            c_sigma * (2.0 - c_sigma) * mu_eff
        ) * whitened
        norm_ps = np.linalg.norm(p_sigma)
        h_sigma = float(
            norm_ps / np.sqrt(1.0 - (1.0 - c_sigma) ** (2.0 * gen))
            < (1.4 + 2.0 / (d + 1.0)) * chi_n
        )
        p_c = (1.0 - c_c) * p_c + h_sigma * np.sqrt(
            c_c * (2.0 - c_c) * mu_eff
        ) * y_w

        rank_one = np.outer(p_c, p_c) + (1.0 - h_sigma) * c_c * (2.0 - c_c) * cov
        rank_mu = (y_sel * weights[:, None]).T @ y_sel
        cov = (1.0 - c_1 - c_mu) * cov + c_1 * rank_one + c_mu * rank_mu
        cov = (cov + cov.T) / 2.0

        sigma = sigma * np.exp((c_sigma / d_sigma) * (norm_ps / chi_n - 1.0))
        mean = new_mean
