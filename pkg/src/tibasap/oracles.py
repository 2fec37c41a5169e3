"""Brute-force and finite-difference checks used by the test suite.

Nothing here imports the solver or the closed-form subproblem code; the
capped-l1 grid kernel evaluates the scalar objective from scratch.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._accel import USE_NUMBA, njit
from .errors import BudgetExceeded

GRID_BUDGET = 10_000_000


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not self.lo < self.hi or not self.step > 0:
            raise ValueError("need lo < hi and step > 0")
        if (self.hi - self.lo) / self.step > GRID_BUDGET:
            raise BudgetExceeded(
                f"{(self.hi - self.lo) / self.step:.3g} grid points exceeds {GRID_BUDGET}")

    @property
    def points(self):
        m = int(math.floor((self.hi - self.lo) / self.step + 1e-9))
        return self.lo + self.step * np.arange(m + 1)


def grid_argmin_1d(objective, grid, chunk=1_000_000):
    """Minimize a vectorized scalar objective over ``lo + i*step``.

    Returns ``(argmin, min_value)``; the leftmost minimizer wins ties.
    """
    pts = grid.points
    best_x, best_v = pts[0], np.inf
    for i in range(0, pts.size, chunk):
        block = pts[i:i + chunk]
        vals = np.asarray(objective(block), dtype=float)
        j = int(np.argmin(vals))
        if vals[j] < best_v:
            best_x, best_v = block[j], float(vals[j])
    return float(best_x), best_v


@njit
def _capped_grid_loop(u, weight, cap, step):
    n = u.shape[0]
    arg = np.empty(n)
    val = np.empty(n)
    for k in range(n):
        uk, wk, ck = u[k], weight[k], cap[k]
        lo_i = math.floor(min(0.0, uk) / step)
        hi_i = math.ceil(max(0.0, uk) / step)
        lo = lo_i * step
        best_v = np.inf
        best_y = lo
        for i in range(hi_i - lo_i + 1):
            y = lo + i * step
            v = wk * min(abs(y), ck) + 0.5 * (y - uk) * (y - uk)
            if v < best_v:
                best_v = v
                best_y = y
        arg[k] = best_y
        val[k] = best_v
    return arg, val


def _capped_grid_numpy(u, weight, cap, step):
    arg = np.empty_like(u)
    val = np.empty_like(u)
    for k in range(u.shape[0]):
        lo_i = math.floor(min(0.0, u[k]) / step)
        hi_i = math.ceil(max(0.0, u[k]) / step)
        y = lo_i * step + step * np.arange(hi_i - lo_i + 1)
        v = weight[k] * np.minimum(np.abs(y), cap[k]) + 0.5 * (y - u[k]) ** 2
        j = int(np.argmin(v))
        arg[k], val[k] = y[j], v[j]
    return arg, val


def capped_l1_grid_batch(u, weight, cap, step=1e-4):
    """Grid minimizer of ``w*min(|y|, cap) + (y - u)^2/2`` for many scalars.

    The penalty is even and nondecreasing in ``|y|``, so the minimizer lies
    between 0 and ``u``; each grid spans that interval on the lattice
    ``step * Z`` (so 0 is always a grid point).
    """
    args = [np.ascontiguousarray(np.broadcast_to(a, np.shape(u)), dtype=np.float64)
            for a in (u, weight, cap)]
    impl = _capped_grid_loop if USE_NUMBA else _capped_grid_numpy
    return impl(*args, float(step))


def fd_gradient(value, x, h=1e-6):
    """Central differences with per-coordinate step ``h * (1 + |x_i|)``."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        hi = h * (1.0 + abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += hi
        xm[i] -= hi
        g[i] = (value(xp) - value(xm)) / (xp[i] - xm[i])
    return g


def perturbation_optimality(objective, candidate, feasible=None, trials=200,
                            magnitude=1e-4, seed=0, slack=1e-9):
    """True iff no feasible Gaussian perturbation lowers the objective by > ``slack``."""
    rng = np.random.default_rng(seed)
    candidate = np.asarray(candidate, dtype=float)
    base = objective(candidate)
    for _ in range(trials):
        z = candidate + magnitude * rng.standard_normal(candidate.shape)
        if feasible is not None and not feasible(z):
            continue
        if objective(z) < base - slack:
            return False
    return True
