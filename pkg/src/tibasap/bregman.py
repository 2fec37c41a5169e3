"""Bregman kernels: squared Euclidean and Itakura-Saito (negative log).

Both generators are frozen dataclasses. ``theta`` and ``eta`` are the
strong-convexity modulus and gradient Lipschitz constant on the working
domain; for the log kernel they depend on a declared box ``[lower, upper]``.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DimensionMismatch, DomainViolation

DEFAULT_FLOOR = 1e-6
LIPSCHITZ_SAFETY = 1.1


class Kind(str, Enum):
    EUCLIDEAN = "euclid"
    ITAKURA_SAITO = "is"


@dataclass(frozen=True)
class BregmanGenerator:
    kind: Kind
    gamma: float
    theta: float
    eta: float
    domain_floor: float = 0.0
    box_upper: float = field(default=np.inf)

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not (self.theta > 0 and self.eta >= self.theta):
            raise ValueError("need 0 < theta <= eta")
        if self.kind is Kind.ITAKURA_SAITO and not self.domain_floor > 0:
            raise ValueError("Itakura-Saito generator needs a positive domain floor")

    @property
    def is_euclidean(self):
        return self.kind is Kind.EUCLIDEAN

    def scaled(self, t):
        """The generator of ``t * phi``."""
        if t == 1.0:
            return self
        return BregmanGenerator(self.kind, self.gamma * t, self.theta * t,
                                self.eta * t, self.domain_floor, self.box_upper)

    def check_domain(self, x):
        if self.kind is Kind.ITAKURA_SAITO:
            x = np.asarray(x)
            if x.size and not np.min(x) >= self.domain_floor:
                raise DomainViolation(
                    f"coordinate {np.min(x):.3g} below domain floor {self.domain_floor:g}")

    def in_domain(self, x):
        if self.kind is Kind.EUCLIDEAN:
            return True
        x = np.asarray(x)
        return bool(x.size == 0 or np.min(x) >= self.domain_floor)


def squared_euclidean(gamma=1.0):
    """Generator ``(gamma/2)|x|^2``; theta = eta = gamma."""
    gamma = float(gamma)
    return BregmanGenerator(Kind.EUCLIDEAN, gamma, gamma, gamma)


def itakura_saito(gamma=1.0, floor=DEFAULT_FLOOR, upper=1.0):
    """Generator ``-gamma * sum(log x)`` restricted to the box ``[floor, upper]^d``.

    On that box the Hessian ``gamma / x**2`` lies between ``gamma/upper**2``
    and ``gamma/floor**2``.
    """
    gamma, floor, upper = float(gamma), float(floor), float(upper)
    if not 0 < floor < upper:
        raise ValueError("need 0 < floor < upper")
    return BregmanGenerator(Kind.ITAKURA_SAITO, gamma, gamma / upper ** 2,
                            gamma / floor ** 2, floor, upper)


def for_lipschitz(kind, lip, safety=LIPSCHITZ_SAFETY, **kw):
    """Generator with ``gamma = safety * lip``, so theta > lip for the Euclidean kernel."""
    gamma = safety * max(float(lip), 0.0)
    if gamma <= 0:
        gamma = safety
    kind = Kind(kind)
    if kind is Kind.EUCLIDEAN:
        return squared_euclidean(gamma)
    return itakura_saito(gamma, **kw)


def phi_value(gen, x):
    x = np.asarray(x, dtype=float)
    if gen.kind is Kind.EUCLIDEAN:
        return 0.5 * gen.gamma * float(x @ x)
    gen.check_domain(x)
    return -gen.gamma * float(np.sum(np.log(x)))


def phi_grad(gen, x):
    x = np.asarray(x, dtype=float)
    if gen.kind is Kind.EUCLIDEAN:
        return gen.gamma * x
    gen.check_domain(x)
    return -gen.gamma / x


def bregman_distance(gen, x, y):
    """``D(x, y) = phi(x) - phi(y) - <grad phi(y), x - y>`` in closed form.

    Itakura-Saito uses ``gamma * sum(r - log r - 1)`` with ``r = x / y``,
    which avoids cancellation between the two log sums.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes {x.shape} and {y.shape} differ")
    if gen.kind is Kind.EUCLIDEAN:
        d = x - y
        return 0.5 * gen.gamma * float(d @ d)
    gen.check_domain(x)
    gen.check_domain(y)
    r = x / y
    # r - 1 - log r computed as expm1-style difference keeps precision near r=1
    return gen.gamma * float(np.sum((r - 1.0) - np.log1p(r - 1.0)))
