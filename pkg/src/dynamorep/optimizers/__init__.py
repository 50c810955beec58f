"""Population-based optimizers with full trajectory logging."""

from .lhs import latin_hypercube
from .rng import ALGORITHM_IDS, evolution_rng, init_rng
from .runner import ALGORITHMS, ITERATIONS, POPULATION, run_trajectory
from .trajectory import (
    Trajectory,
    read_trajectory_csv,
    trajectory_header,
    write_trajectory_csv,
)

__all__ = [
    "ALGORITHMS",
    "ALGORITHM_IDS",
    "ITERATIONS",
    "POPULATION",
    "Trajectory",
    "evolution_rng",
    "init_rng",
    "latin_hypercube",
    "read_trajectory_csv",
    "run_trajectory",
    "trajectory_header",
    "write_trajectory_csv",
]
