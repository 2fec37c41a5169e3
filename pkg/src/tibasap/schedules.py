"""Extrapolation weight schedules.

A schedule hands out ``(alpha, beta)`` before each step via :meth:`next` and,
for the adaptive variant, hears back whether the extrapolated point was
accepted via :meth:`feedback`.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import SumBoundViolation


class Variant(str, Enum):
    CONSTANT = "constant"
    FISTA = "fista"
    RATIO = "ratio"
    ADAPTIVE = "adaptive"


@dataclass
class ExtrapolationSchedule:
    variant: Variant
    alpha: float = 0.0
    beta: float = 0.0
    alpha_max: float = 0.5
    beta_max: float = 0.499
    t_factor: float = 1.2
    t_prev: float = 1.0
    t_cur: float = 1.0
    k: int = 0
    enforce_sum_bound: bool = True

    def __post_init__(self):
        self.variant = Variant(self.variant)
        if self.variant is Variant.ADAPTIVE:
            if not self.t_factor > 1:
                raise ValueError("adaptive schedule needs t_factor > 1")
            if self.enforce_sum_bound and self.alpha_max + self.beta_max >= 1:
                raise SumBoundViolation(
                    f"alpha_max + beta_max = {self.alpha_max + self.beta_max} >= 1")
            if not (0 <= self.alpha <= self.alpha_max and 0 <= self.beta <= self.beta_max):
                raise ValueError("initial weights outside [0, max]")
        if self.variant is Variant.CONSTANT and self.enforce_sum_bound \
                and self.alpha + self.beta >= 1:
            raise SumBoundViolation(f"alpha + beta = {self.alpha + self.beta} >= 1")

    def next(self):
        """Weights for the current iteration."""
        if self.variant is Variant.CONSTANT or self.variant is Variant.ADAPTIVE:
            return self.alpha, self.beta
        if self.variant is Variant.FISTA:
            return next_fista(self)
        return next_ratio(self)

    def feedback(self, accepted):
        if self.variant is Variant.ADAPTIVE:
            adaptive_update(self, accepted)
        elif self.variant is Variant.CONSTANT:
            self.k += 1

    def copy(self):
        return ExtrapolationSchedule(**self.__dict__)


def constant(alpha, beta, enforce_sum_bound=True):
    return ExtrapolationSchedule(Variant.CONSTANT, alpha=alpha, beta=beta,
                                 enforce_sum_bound=enforce_sum_bound)


def fista():
    return ExtrapolationSchedule(Variant.FISTA)


def ratio(enforce_sum_bound=False):
    return ExtrapolationSchedule(Variant.RATIO, enforce_sum_bound=enforce_sum_bound)


def adaptive(alpha0=0.3, beta0=0.2, t_factor=1.2, alpha_max=0.5, beta_max=0.499):
    return ExtrapolationSchedule(Variant.ADAPTIVE, alpha=alpha0, beta=beta0,
                                 alpha_max=alpha_max, beta_max=beta_max,
                                 t_factor=t_factor)


def next_constant(s):
    return s.alpha, s.beta


def next_fista(s):
    """Return ``(t_{k-1} - 1) / (2 t_k)`` for both weights, then advance ``t``."""
    w = (s.t_prev - 1.0) / (2.0 * s.t_cur)
    s.t_prev, s.t_cur = s.t_cur, (1.0 + math.sqrt(1.0 + 4.0 * s.t_cur ** 2)) / 2.0
    s.alpha = s.beta = w
    s.k += 1
    return w, w


def next_ratio(s):
    w = max(0.0, (s.k - 1) / (s.k + 2))
    if s.enforce_sum_bound and 2 * w >= 1:
        raise SumBoundViolation(
            f"ratio schedule gives alpha + beta = {2 * w} at k={s.k}")
    s.alpha = s.beta = w
    s.k += 1
    return w, w


def adaptive_update(s, accepted):
    if accepted:
        s.alpha = min(s.t_factor * s.alpha, s.alpha_max)
        s.beta = min(s.t_factor * s.beta, s.beta_max)
    else:
        s.alpha = s.alpha / s.t_factor
        s.beta = s.beta / s.t_factor
    s.k += 1
    return s
