"""Capped-l1 sparse logistic regression, split with a quadratic penalty.

::

    L(x, y) = 1/n sum log(1 + exp(-b_i a_i'x)) + lam sum min(|y_j|, cap)
              + mu/2 |x - y|^2

with ``f`` the logistic loss on the x-block and ``g = 0``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import expit

from ..errors import DomainViolation, UnsupportedGenerator
from ..kernels import capped_l1_prox_kernel, log_barrier_root
from .base import ProblemSpec, zero_grad, zero_value

FLIP_RATE = 0.05


@dataclass(frozen=True)
class LogRegInstance:
    samples: np.ndarray
    labels: np.ndarray
    lam: float = 1e-3
    theta_cap: float = 1e-4
    mu: float = 1.0
    seed: Optional[int] = None

    def __post_init__(self):
        if not np.all(np.abs(self.labels) == 1):
            raise ValueError("labels must be -1 or +1")
        if not (self.lam > 0 and self.theta_cap > 0 and self.mu > 0):
            raise ValueError("lam, theta_cap and mu must be positive")

    @property
    def n(self):
        return self.samples.shape[0]

    @property
    def d(self):
        return self.samples.shape[1]

    @property
    def lip_bound(self):
        """Global bound ``|A' diag(b)|_2^2 / (4n)`` on the loss curvature."""
        M = self.samples * self.labels[:, None]
        return float(np.linalg.norm(M, 2) ** 2 / (4 * self.n))


def gen_logreg(n=500, d=200, seed=0, lam=1e-3, theta_cap=None, mu=1.0,
               flip_rate=FLIP_RATE):
    """Synthetic data: Gaussian features, labels ``sign(a'w)`` from a planted
    Gaussian ``w`` with each label flipped with probability ``flip_rate``."""
    if n < 1 or d < 1:
        raise ValueError("need n, d >= 1")
    if theta_cap is None:
        theta_cap = 0.1 * lam
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((n, d))
    w = rng.standard_normal(d)
    labels = np.where(samples @ w >= 0, 1.0, -1.0)
    flips = rng.random(n) < flip_rate
    labels[flips] = -labels[flips]
    return LogRegInstance(samples, labels, float(lam), float(theta_cap),
                          float(mu), seed)


def logistic_value_grad(inst, x):
    """Mean logistic loss and its gradient, stable for large margins."""
    m = inst.labels * (inst.samples @ x)
    value = float(np.mean(np.logaddexp(0.0, -m)))
    grad = -(inst.samples.T @ (inst.labels * expit(-m))) / inst.n
    return value, grad


def capped_l1_value(y, weight, cap):
    return weight * float(np.sum(np.minimum(np.abs(y), cap)))


def capped_l1_prox(u, weight, theta_cap):
    """Per-coordinate argmin of ``weight*min(|y|, cap) + 1/2 (y - u)^2``.

    Two candidates are compared: one above the cap (``sign(u) max(cap, |u|)``)
    and the soft-threshold clipped to the cap. Ties go to the smaller ``|y|``.
    """
    return capped_l1_prox_kernel(u, weight, theta_cap)


def logreg_solve_x(inst, y_hat, x_hat, grad_f_hat, gen, scale=1.0):
    """Minimize ``mu/2 |x - y_hat|^2 + <grad_f_hat, x> + scale * D(x, x_hat)``."""
    mu = inst.mu
    c = scale * gen.gamma
    if gen.is_euclidean:
        return (mu * y_hat + c * x_hat - grad_f_hat) / (mu + c)
    if not np.min(x_hat) >= gen.domain_floor:
        raise DomainViolation("x_hat below the Itakura-Saito domain floor")
    # minimized over x >= floor, the declared domain of the log kernel
    return log_barrier_root(mu, c / x_hat + grad_f_hat - mu * y_hat, c,
                            gen.domain_floor)


def logreg_solve_y(inst, x_new, y_hat, gen, scale=1.0):
    if not gen.is_euclidean:
        raise UnsupportedGenerator("the capped-l1 y-step needs the Euclidean kernel")
    eta = gen.gamma * scale
    t = inst.mu + eta
    u = (eta * y_hat + inst.mu * x_new) / t
    return capped_l1_prox(u, inst.lam / t, inst.theta_cap)


def logreg_problem(inst, x_floor=None):
    A, b, n, mu = inst.samples, inst.labels, inst.n, inst.mu
    lam, cap = inst.lam, inst.theta_cap

    def f_value(x):
        return float(np.mean(np.logaddexp(0.0, -b * (A @ x))))

    def f_grad(x):
        return -(A.T @ (b * expit(-b * (A @ x)))) / n

    def q_value(x, y):
        if x_floor is not None and np.min(x) < x_floor:
            return np.inf
        d = x - y
        return lam * float(np.sum(np.minimum(np.abs(y), cap))) + 0.5 * mu * (d @ d)

    def q_grad_x(x, y):
        return mu * (x - y)

    def solve_x(y_hat, x_hat, grad_f_hat, gen, scale):
        return logreg_solve_x(inst, y_hat, x_hat, grad_f_hat, gen, scale)

    def solve_y(x_new, y_hat, grad_g_hat, gen, scale):
        return logreg_solve_y(inst, x_new, y_hat, gen, scale)

    return ProblemSpec(
        name="logreg", dim_x=inst.d, dim_y=inst.d,
        f_value=f_value, f_grad=f_grad, g_value=zero_value, g_grad=zero_grad,
        q_value=q_value, q_grad_x=q_grad_x, solve_x=solve_x, solve_y=solve_y,
        lip_f=inst.lip_bound, lip_g=0.0, xi=mu, x_upper=10.0)
