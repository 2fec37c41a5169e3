from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class ProblemSpec:
    """Oracle bundle for ``L(x, y) = f(x) + Q(x, y) + g(y)``.

    ``q_value`` returns ``inf`` outside ``dom Q``. ``solve_x`` and ``solve_y``
    return exact minimizers of the two block subproblems::

        solve_x(y_hat, x_hat, grad_f_hat, gen, scale)
            argmin_x Q(x, y_hat) + <grad_f_hat, x> + scale * D(x, x_hat)
        solve_y(x_new, y_hat, grad_g_hat, gen, scale)
            argmin_y Q(x_new, y) + <grad_g_hat, y> + scale * D(y, y_hat)

    ``lip_f``/``lip_g``/``xi`` are ``None`` when unknown.
    """

    name: str
    dim_x: int
    dim_y: int
    f_value: Callable
    f_grad: Callable
    g_value: Callable
    g_grad: Callable
    q_value: Callable
    solve_x: Callable
    solve_y: Callable
    q_grad_x: Optional[Callable] = None
    lip_f: Optional[float] = None
    lip_g: Optional[float] = None
    xi: Optional[float] = None
    x_upper: float = 1.0
    objective: Optional[Callable] = None

    def value(self, x, y):
        if self.objective is not None:
            return self.objective(x, y)
        q = self.q_value(x, y)
        if not np.isfinite(q):
            return np.inf
        return self.f_value(x) + q + self.g_value(y)


def zero_value(_x):
    return 0.0


def zero_grad(x):
    return np.zeros_like(x)
