"""Seeded construction of BBOB problem instances.

An instance of a problem class is a deterministic transformation (shift,
rotation, objective offset) of the base function. All pseudo-random
quantities come from a counter-based Philox generator keyed by
``problem_id * 10**6 + instance_id``, with a fixed draw order:

1. ``anchor``: uniform vector in [-4, 4]^d (the ``x_opt`` field)
2. two standard normals -> ``f_opt`` (Cauchy-style ratio, 2 decimals,
   clamped to [-1000, 1000])
3. ``R``: Gram-Schmidt orthonormalization of a d x d Gaussian matrix
4. ``Q``: same, from fresh draws
5. class-specific extras (Gallagher peak layout for classes 21/22)

Classes 5, 20 and 24 place their true optimum on a sign-pattern grid with
only 2^d distinct locations, so for them ``x_opt`` keeps the continuous
anchor (which makes instances pairwise distinct) and the sign pattern is
derived from it; ``true_optimum`` returns the actual optimizer location for
every class.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SearchDomain",
    "ProblemInstance",
    "make_instance",
    "true_optimum",
    "SIGN_PATTERN_CLASSES",
]

N_PROBLEMS = 24

# Classes whose optimum is a sign-pattern grid point derived from x_opt
# rather than x_opt itself.
SIGN_PATTERN_CLASSES = frozenset({5, 20, 24})

_SCHWEFEL_MU = 4.2096874633
_LUNACEK_MU = 2.5


@dataclass(frozen=True)
class SearchDomain:
    """The [-5, 5]^d box all problems are defined on."""

    dimension: int

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")

    @property
    def lower(self):
        return np.full(self.dimension, -5.0)

    @property
    def upper(self):
        return np.full(self.dimension, 5.0)


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """One transformed BBOB problem; immutable after construction."""

    problem_id: int
    instance_id: int
    dimension: int
    x_opt: np.ndarray
    f_opt: float
    R: np.ndarray
    Q: np.ndarray
    extras: dict = field(default_factory=dict)

    def evaluate(self, x):
        from .functions import evaluate

        return evaluate(self, x)

    @property
    def domain(self):
        return SearchDomain(self.dimension)


def _gram_schmidt(m):
    """Orthonormalize the rows of a square matrix in place."""
    b = m.copy()
    for i in range(b.shape[0]):
        for j in range(i):
            b[i] -= np.dot(b[i], b[j]) * b[j]
        b[i] /= np.sqrt(np.sum(b[i] ** 2))
    return b


def _freeze(a):
    a.setflags(write=False)
    return a


def make_instance(problem_id, instance_id, dimension):
    """Build a fully initialized, deterministic problem instance.

    Identical arguments always produce identical fields.
    """
    if not 1 <= problem_id <= N_PROBLEMS:
        raise ValueError(f"problem_id must be in 1..{N_PROBLEMS}, got {problem_id}")
    if instance_id < 1:
        raise ValueError(f"instance_id must be >= 1, got {instance_id}")
    if dimension < 2:
        raise ValueError(f"dimension must be >= 2, got {dimension}")

    d = dimension
    g = np.random.Generator(np.random.Philox(key=problem_id * 10**6 + instance_id))

    anchor = g.uniform(-4.0, 4.0, d)
    anchor[anchor == 0.0] = -1e-5  # sign-pattern classes need nonzero components

    g1, g2 = g.standard_normal(2)
    f_opt = float(np.clip(np.round(100.0 * (100.0 * g1 / g2)) / 100.0, -1000.0, 1000.0))

    R = _gram_schmidt(g.standard_normal((d, d)))
    Q = _gram_schmidt(g.standard_normal((d, d)))

    x_opt = anchor
    extras = {}

    if problem_id == 4:
        x_opt = anchor.copy()
        x_opt[::2] = np.abs(x_opt[::2])
    elif problem_id == 8:
        x_opt = 0.75 * anchor
    elif problem_id in (9, 19):
        # Optimum determined by the rotation: z = scale*R(x) + 0.5 must hit 1.
        scale = max(1.0, np.sqrt(d) / 8.0)
        x_opt = (0.5 / scale) * (R.T @ np.ones(d))
    elif problem_id in (21, 22):
        npeaks = 101 if problem_id == 21 else 21
        fac2 = 1.0 if problem_id == 21 else 0.98
        top_cond = 1000.0**0.5 if problem_id == 21 else 1000.0

        shuffle = g.permutation(npeaks - 1)
        conds = np.concatenate(
            ([top_cond], (1000.0 ** np.linspace(0, 1, npeaks - 1))[shuffle])
        )
        ramp = np.linspace(-0.5, 0.5, d)
        scales = np.empty((npeaks, d))
        for i in range(npeaks):
            scales[i] = (conds[i] ** ramp)[g.permutation(d)]

        raw = fac2 * g.uniform(-5.0, 5.0, (npeaks, d))
        raw[0] *= 0.8  # keep the global optimum away from the boundary
        x_opt = raw[0].copy()
        extras = {
            "peak_rot_locations": _freeze(raw @ R.T),
            "peak_scales": _freeze(scales),
            "peak_values": _freeze(
                np.concatenate(([10.0], np.linspace(1.1, 9.1, npeaks - 1)))
            ),
        }

    return ProblemInstance(
        problem_id=problem_id,
        instance_id=instance_id,
        dimension=d,
        x_opt=_freeze(np.array(x_opt, dtype=float)),
        f_opt=f_opt,
        R=_freeze(R),
        Q=_freeze(Q),
        extras=extras,
    )


def true_optimum(instance):
    """Location of the global optimum (equals x_opt except for classes 5/20/24)."""
    pid = instance.problem_id
    s = np.sign(instance.x_opt)
    if pid == 5:
        return 5.0 * s
    if pid == 20:
        return 0.5 * _SCHWEFEL_MU * s
    if pid == 24:
        return 0.5 * _LUNACEK_MU * s
    return instance.x_opt.copy()
