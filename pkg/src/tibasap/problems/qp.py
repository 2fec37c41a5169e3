"""Ball-constrained nonconvex QP, split with a quadratic penalty.

The instance ``min 1/2 y'Ay + b'y  s.t. y in ball(r)`` becomes::

    L(x, y) = 1/2 y'Ay + b'y + indicator_S(x) + mu/2 |x - y|^2

with ``f = 0`` on the x-block and ``g(y) = 1/2 y'Ay + b'y``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..bregman import Kind
from ..errors import DomainViolation, UnsupportedGenerator
from ..kernels import log_barrier_ball_solve
from .base import ProblemSpec, zero_grad, zero_value

MU_FACTOR = 10.0
# relative slack on |x| <= r; radial projection lands on the sphere only to a few ulps
BALL_SLACK = 1e-10


@dataclass(frozen=True)
class QpInstance:
    A: np.ndarray
    b: np.ndarray
    radius: float
    mu: float
    seed: Optional[int] = None

    def __post_init__(self):
        if not np.array_equal(self.A, self.A.T):
            raise ValueError("A must be exactly symmetric")
        if not (self.radius > 0 and self.mu > 0):
            raise ValueError("radius and mu must be positive")

    @property
    def n(self):
        return self.b.shape[0]

    @property
    def lip_g(self):
        """Largest singular value of ``A``."""
        return float(np.linalg.norm(self.A, 2))


def gen_qp(n, radius=2.0, seed=0, mu=None):
    """Random instance with ``A = D + D'`` and ``D``, ``b`` standard normal.

    ``mu`` defaults to ``10 * |A|_2``.
    """
    if n < 1 or not radius > 0:
        raise ValueError("need n >= 1 and radius > 0")
    rng = np.random.default_rng(seed)
    D = rng.standard_normal((n, n))
    b = rng.standard_normal(n)
    A = D + D.T
    if mu is None:
        mu = MU_FACTOR * float(np.linalg.norm(A, 2))
    return QpInstance(A, b, float(radius), float(mu), seed)


def qp_solve_y(inst, x_new, y_hat, gen, grad_g_hat=None, scale=1.0):
    """Closed-form y-step ``(mu x + lam y_hat - A y_hat - b) / (mu + lam)``."""
    if not gen.is_euclidean:
        raise UnsupportedGenerator("the QP y-step is closed form only for the Euclidean kernel")
    lam = gen.gamma * scale
    if grad_g_hat is None:
        grad_g_hat = inst.A @ y_hat + inst.b
    return (inst.mu * x_new + lam * y_hat - grad_g_hat) / (inst.mu + lam)


def qp_solve_x(inst, y_hat, x_hat, gen, scale=1.0):
    """Minimize ``mu/2 |x - y_hat|^2 + scale * D(x, x_hat)`` over the ball.

    Euclidean kernel: radial projection of the weighted center. Log kernel:
    the ball is intersected with ``x >= floor`` and the multiplier is found by
    bisection in :func:`tibasap.kernels.log_barrier_ball_solve`.
    """
    mu, r = inst.mu, inst.radius
    c = scale * gen.gamma
    if gen.is_euclidean:
        x = (mu * y_hat + c * x_hat) / (mu + c)
        nrm = np.sqrt(x @ x)
        if nrm > r:
            x = x * (r / nrm)
        return x
    if not np.min(x_hat) > 0 or not np.min(x_hat) >= gen.domain_floor:
        raise DomainViolation("x_hat must lie at or above the domain floor")
    x, _ = log_barrier_ball_solve(y_hat, x_hat, mu, c, r, gen.domain_floor)
    return x


def qp_value(inst, x, y, x_floor=None):
    """Penalized objective; ``inf`` when x leaves the feasible set."""
    if x @ x > inst.radius ** 2 * (1.0 + BALL_SLACK):
        return np.inf
    if x_floor is not None and np.min(x) < x_floor:
        return np.inf
    d = x - y
    return 0.5 * (y @ (inst.A @ y)) + inst.b @ y + 0.5 * inst.mu * (d @ d)


def qp_problem(inst, x_floor=None):
    """Wrap an instance as a :class:`ProblemSpec`.

    ``x_floor`` adds ``x >= x_floor`` to the feasible set, as needed when the
    x-block uses the Itakura-Saito kernel.
    """
    A, b, mu, r2 = inst.A, inst.b, inst.mu, inst.radius ** 2 * (1.0 + BALL_SLACK)

    def g_value(y):
        return 0.5 * (y @ (A @ y)) + b @ y

    def g_grad(y):
        return A @ y + b

    def q_value(x, y):
        if x @ x > r2 or (x_floor is not None and np.min(x) < x_floor):
            return np.inf
        d = x - y
        return 0.5 * mu * (d @ d)

    def q_grad_x(x, y):
        return mu * (x - y)

    def solve_x(y_hat, x_hat, grad_f_hat, gen, scale):
        return qp_solve_x(inst, y_hat, x_hat, gen, scale)

    def solve_y(x_new, y_hat, grad_g_hat, gen, scale):
        return qp_solve_y(inst, x_new, y_hat, gen, grad_g_hat, scale)

    def objective(x, y):
        return qp_value(inst, x, y, x_floor)

    lip = inst.lip_g
    return ProblemSpec(
        name="qp", dim_x=inst.n, dim_y=inst.n,
        f_value=zero_value, f_grad=zero_grad, g_value=g_value, g_grad=g_grad,
        q_value=q_value, q_grad_x=q_grad_x, solve_x=solve_x, solve_y=solve_y,
        # f = 0, but its constant is set equal to g's for generator sizing
        lip_f=lip, lip_g=lip, xi=mu, x_upper=inst.radius, objective=objective)
