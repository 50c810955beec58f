"""Shared transformation helpers for the BBOB function definitions.

All helpers operate on the last axis so they accept a single point of shape
``(d,)`` or a batch of shape ``(m, d)``.
"""

import numpy as np

__all__ = ["t_osz", "t_asy", "lambda_scaling", "f_pen"]


def t_osz(x):
    """Oscillatory monotone map, applied elementwise; identity at 0.

    Uses different constants for the positive and negative branches.
    """
    x = np.asarray(x, dtype=float)
    out = x.copy()
    idx = x > 0
    z = np.log(x[idx]) / 0.1
    out[idx] = np.exp(z + 0.49 * (np.sin(z) + np.sin(0.79 * z))) ** 0.1
    idx = x < 0
    z = np.log(-x[idx]) / 0.1
    out[idx] = -np.exp(z + 0.49 * (np.sin(0.55 * z) + np.sin(0.31 * z))) ** 0.1
    return out


def t_asy(x, beta):
    """Asymmetric map: raises positive components to a growing power.

    Component i (0-based) with x_i > 0 becomes
    ``x_i ** (1 + beta * i/(d-1) * sqrt(x_i))``; non-positive components pass
    through unchanged.
    """
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    ramp = np.arange(d) / max(d - 1, 1)
    out = x.copy()
    idx = x > 0
    expo = 1.0 + beta * np.broadcast_to(ramp, x.shape)[idx] * np.sqrt(x[idx])
    out[idx] = x[idx] ** expo
    return out


def lambda_scaling(alpha, d):
    """Diagonal of the conditioning matrix: entries alpha^(i / (2(d-1)))."""
    ramp = np.arange(d) / max(d - 1, 1)
    return alpha ** (0.5 * ramp)


def f_pen(x):
    """Boundary penalty: sum of squared excursions beyond [-5, 5]."""
    x = np.asarray(x, dtype=float)
    return np.sum(np.maximum(0.0, np.abs(x) - 5.0) ** 2, axis=-1)
