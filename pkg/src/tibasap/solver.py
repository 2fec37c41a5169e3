"""Two-step inertial Bregman alternating proximal gradient engine.

One iteration:

1. exact x-step at the hat point, then y-step at the fresh x (Gauss-Seidel);
2. extrapolate ``u = z_new + alpha (z_new - z_k) + beta (z_k - z_{k-1})``;
3. keep ``u`` as the next hat point only if ``L(u) <= L(z_new)``.

With ``alpha = beta = 0`` this is plain ASAP; with ``beta = 0`` it is the
one-step inertial variant.
"""

import csv
import time
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np

from .errors import BacktrackDivergence, DimensionMismatch, NonDescent
from .schedules import ExtrapolationSchedule, constant

DESCENT_SLACK = 1e-9
TRACE_HEADER = ("k", "E", "L", "L_hat", "accepted", "alpha", "beta",
                "t_x", "t_y", "elapsed")


class Point(NamedTuple):
    x: np.ndarray
    y: np.ndarray


@dataclass
class Backtracking:
    rho: float = 2.0
    delta: float = 1e-5
    t_min: float = 1.3
    use_bb: bool = True
    max_doublings: int = 60

    def __post_init__(self):
        if not (self.rho > 1 and self.delta > 0 and self.t_min > 0):
            raise ValueError("need rho > 1, delta > 0, t_min > 0")


@dataclass
class SolverConfig:
    bregman_x: object
    bregman_y: object
    schedule: ExtrapolationSchedule = field(default_factory=lambda: constant(0.0, 0.0))
    tol: float = 1e-4
    max_iter: int = 100_000
    backtracking: Optional[Backtracking] = None
    keep_points: bool = False
    check_descent: bool = True

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")


@dataclass
class TraceRow:
    k: int
    E: float
    L: float
    L_hat: float
    accepted: bool
    alpha: float
    beta: float
    t_x: float
    t_y: float
    elapsed: float

    def as_tuple(self):
        return (self.k, self.E, self.L, self.L_hat, self.accepted, self.alpha,
                self.beta, self.t_x, self.t_y, self.elapsed)


@dataclass
class RunTrace:
    rows: List[TraceRow]
    L0: float
    iterations: int = 0
    wall_time_seconds: float = 0.0
    extrapolation_count: int = 0
    converged: bool = False
    final_point: Optional[Point] = None
    # iterates z_0..z_K and hat points w_0..w_{K-1}, when retained
    iterates: Optional[List[Point]] = None
    hat_points: Optional[List[Point]] = None
    bregman_x: object = None
    bregman_y: object = None

    @property
    def summary(self):
        return {"iterations": self.iterations,
                "wall_time_seconds": self.wall_time_seconds,
                "extrapolation_count": self.extrapolation_count,
                "converged": self.converged,
                "final_point": self.final_point}

    def column(self, name):
        return np.array([getattr(r, name) for r in self.rows])

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(TRACE_HEADER)
            for r in self.rows:
                w.writerow([r.k, repr(r.E), repr(r.L), repr(r.L_hat), int(r.accepted),
                            repr(r.alpha), repr(r.beta), repr(r.t_x), repr(r.t_y),
                            f"{r.elapsed:.6f}"])


def _check_pair(*pts):
    x0, y0 = pts[0]
    for p in pts[1:]:
        if p.x.shape != x0.shape or p.y.shape != y0.shape:
            raise DimensionMismatch("iterate pairs have different shapes")


def extrapolate(z_new, z_cur, z_prev, alpha, beta):
    """``z_new + alpha (z_new - z_cur) + beta (z_cur - z_prev)`` blockwise."""
    _check_pair(z_new, z_cur, z_prev)
    if alpha == 0.0 and beta == 0.0:
        return z_new
    return Point(z_new.x + alpha * (z_new.x - z_cur.x) + beta * (z_cur.x - z_prev.x),
                 z_new.y + alpha * (z_new.y - z_cur.y) + beta * (z_cur.y - z_prev.y))


def monotone_gate(L_extrap, L_plain):
    return bool(L_extrap <= L_plain)


def residual(z_new, z_old):
    """``|x_new - x_old| + |y_new - y_old|``."""
    _check_pair(z_new, z_old)
    return float(np.linalg.norm(z_new.x - z_old.x) + np.linalg.norm(z_new.y - z_old.y))


def bb_stepsize(grad_new, grad_old, x_new, x_old, t_min):
    """Barzilai-Borwein curvature ``|s'l| / s's`` floored at ``t_min``."""
    s = np.asarray(x_new) - np.asarray(x_old)
    ss = float(s @ s)
    if ss == 0.0:
        return float(t_min)
    l = np.asarray(grad_new) - np.asarray(grad_old)
    return max(abs(float(s @ l)) / ss, float(t_min))


def backtrack_x_update(problem, hat, t0, cfg, grad_f_hat=None):
    """x-step with the Bregman term scaled by ``t``, growing ``t`` by ``rho``.

    Stops once ``Q(x+, y^) + f(x+) <= Q(x^, y^) + f(x^) - delta/2 |x+ - x^|^2``
    and returns ``(x+, t)`` with ``t`` the scale that produced ``x+``.
    """
    bt = cfg.backtracking
    if grad_f_hat is None:
        grad_f_hat = problem.f_grad(hat.x)
    ref = problem.q_value(hat.x, hat.y) + problem.f_value(hat.x)
    t = float(t0)
    for _ in range(bt.max_doublings + 1):
        x_new = problem.solve_x(hat.y, hat.x, grad_f_hat, cfg.bregman_x, t)
        d = x_new - hat.x
        lhs = problem.q_value(x_new, hat.y) + problem.f_value(x_new)
        if lhs <= ref - 0.5 * bt.delta * float(d @ d):
            return x_new, t
        t *= bt.rho
    raise BacktrackDivergence(
        f"sufficient decrease failed after {bt.max_doublings} increases (t={t:g})")


def alternating_step(problem, hat, cfg, grad_f_hat=None, t_x=1.0):
    """Exact x-step at the hat point, then the y-step at the fresh x."""
    if grad_f_hat is None:
        grad_f_hat = problem.f_grad(hat.x)
    x_new = problem.solve_x(hat.y, hat.x, grad_f_hat, cfg.bregman_x, t_x)
    y_new = problem.solve_y(x_new, hat.y, problem.g_grad(hat.y), cfg.bregman_y, 1.0)
    return Point(x_new, y_new)


def _as_point(z0):
    x, y = z0
    return Point(np.array(x, dtype=float), np.array(y, dtype=float))


def run(problem, z0, cfg):
    """Iterate until ``E_k < tol`` or ``max_iter`` steps; return the trace."""
    start = time.perf_counter()
    sched = cfg.schedule
    gx, gy = cfg.bregman_x, cfg.bregman_y
    bt = cfg.backtracking

    z_cur = _as_point(z0)
    gx.check_domain(z_cur.x)
    gy.check_domain(z_cur.y)
    z_prev = z_cur
    hat = z_cur
    L_cur = problem.value(*z_cur)
    if not np.isfinite(L_cur):
        raise ValueError("starting point is outside dom L")

    trace = RunTrace(rows=[], L0=L_cur, bregman_x=gx, bregman_y=gy)
    if cfg.keep_points:
        trace.iterates = [z_cur]
        trace.hat_points = []

    t_x = bt.t_min if bt is not None else 1.0
    prev_x = prev_hat_x = prev_grad_hat = None
    k = 0
    for k in range(cfg.max_iter):
        alpha, beta = sched.next()
        grad_f_hat = problem.f_grad(hat.x)
        if bt is None:
            z_new = alternating_step(problem, hat, cfg, grad_f_hat)
        else:
            if bt.use_bb and prev_x is not None:
                t0 = bb_stepsize(problem.f_grad(prev_x), prev_grad_hat, prev_x,
                                 prev_hat_x, bt.t_min)
            elif bt.use_bb:
                t0 = bt.t_min
            else:
                t0 = t_x
            x_new, t_x = backtrack_x_update(problem, hat, t0, cfg, grad_f_hat)
            prev_hat_x, prev_grad_hat = hat.x, grad_f_hat
            prev_x = x_new
            z_new = Point(x_new, problem.solve_y(x_new, hat.y, problem.g_grad(hat.y),
                                                 gy, 1.0))
        L_new = problem.value(*z_new)

        if cfg.check_descent and L_new > L_cur + DESCENT_SLACK * (1.0 + abs(L_cur)):
            raise NonDescent(f"L rose from {L_cur!r} to {L_new!r} at k={k}")

        u = extrapolate(z_new, z_cur, z_prev, alpha, beta)
        if u is z_new:
            L_u = L_new
        elif gx.in_domain(u.x) and gy.in_domain(u.y):
            L_u = problem.value(*u)
        else:
            L_u = np.inf
        accepted = monotone_gate(L_u, L_new)
        sched.feedback(accepted)
        if cfg.keep_points:
            trace.hat_points.append(hat)
            trace.iterates.append(z_new)
        hat, L_hat = (u, L_u) if accepted else (z_new, L_new)

        E = residual(z_new, z_cur)
        z_prev, z_cur, L_cur = z_cur, z_new, L_new
        trace.extrapolation_count += accepted
        trace.rows.append(TraceRow(k, E, L_new, L_hat, accepted, alpha, beta,
                                   t_x, 1.0, time.perf_counter() - start))
        if E < cfg.tol:
            trace.converged = True
            break

    trace.iterations = len(trace.rows)
    trace.wall_time_seconds = time.perf_counter() - start
    trace.final_point = z_cur
    return trace
