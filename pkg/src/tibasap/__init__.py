"""Two-step inertial Bregman alternating structure-adapted proximal gradient."""

from . import bregman, diagnostics, oracles, problems, schedules
from .bregman import BregmanGenerator, bregman_distance, phi_grad, phi_value
from .schedules import ExtrapolationSchedule
from .solver import (Backtracking, alternating_step, Point, RunTrace, SolverConfig, backtrack_x_update,
                     bb_stepsize, extrapolate, monotone_gate, residual, run)

__version__ = "0.1.0"

__all__ = [
    "bregman", "diagnostics", "oracles", "problems", "schedules",
    "BregmanGenerator", "bregman_distance", "phi_grad", "phi_value",
    "ExtrapolationSchedule", "Backtracking", "Point", "RunTrace", "SolverConfig",
    "alternating_step", "backtrack_x_update", "bb_stepsize", "extrapolate", "monotone_gate", "residual",
    "run",
]
