"""Trace replays that certify the per-iteration descent guarantees.

Both certificates need a trace recorded with ``keep_points=True``.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .bregman import phi_grad
from .errors import InvalidModulus, MissingHatPoints, MissingOracle


@dataclass
class CertificateReport:
    violations: List[int] = field(default_factory=list)
    margins: np.ndarray = None

    @property
    def certified(self):
        return not self.violations


def descent_modulus(theta_x, theta_y, lip_f, lip_g):
    """``min((theta_x - lip_f) / 2, (theta_y - lip_g) / 2)``."""
    return min((theta_x - lip_f) / 2.0, (theta_y - lip_g) / 2.0)


def subgradient_constant(lip_f, lip_g, eta_x, eta_y, xi):
    """``sqrt(max(2 (lip_f + eta_x)^2, 2 xi^2 + 2 (lip_g + eta_y)^2))``."""
    return float(np.sqrt(max(2 * (lip_f + eta_x) ** 2,
                             2 * xi ** 2 + 2 * (lip_g + eta_y) ** 2)))


def _points(trace, hat_points=None):
    hats = hat_points if hat_points is not None else trace.hat_points
    if hats is None or trace.iterates is None:
        raise MissingHatPoints("trace was recorded without keep_points=True")
    if len(hats) != len(trace.rows) or len(trace.iterates) != len(trace.rows) + 1:
        raise MissingHatPoints("retained points do not match the trace rows")
    return trace.iterates, hats


def _step_sq(z_next, hat):
    dx = z_next.x - hat.x
    dy = z_next.y - hat.y
    return float(dx @ dx + dy @ dy)


def certify_sufficient_decrease(trace, rho_const, hat_points=None, tol_cert=None):
    """Flag every k with ``L(z_{k+1}) > L(z_k) - rho |z_{k+1} - w_k|^2 + tol``.

    ``tol_cert`` defaults to ``1e-8 * (1 + |L(z_0)|)``.
    """
    if not rho_const > 0:
        raise InvalidModulus(f"descent modulus must be positive, got {rho_const}")
    iterates, hats = _points(trace, hat_points)
    if tol_cert is None:
        tol_cert = 1e-8 * (1.0 + abs(trace.L0))
    L_prev = trace.L0
    report = CertificateReport(margins=np.empty(len(trace.rows)))
    for k, row in enumerate(trace.rows):
        bound = L_prev - rho_const * _step_sq(iterates[k + 1], hats[k])
        report.margins[k] = bound - row.L
        if row.L > bound + tol_cert:
            report.violations.append(k)
        L_prev = row.L
    return report


def subgradient_vectors(problem, z_next, hat, gen_x, gen_y, t_x=1.0, t_y=1.0):
    """The pair ``(p_x, p_y)`` lying in the limiting subdifferential at ``z_next``."""
    if problem.q_grad_x is None:
        raise MissingOracle(f"problem {problem.name!r} has no grad_x q oracle")
    x1, y1 = z_next
    xh, yh = hat
    p_x = (problem.q_grad_x(x1, y1) - problem.q_grad_x(x1, yh)
           + problem.f_grad(x1) - problem.f_grad(xh)
           - t_x * (phi_grad(gen_x, x1) - phi_grad(gen_x, xh)))
    p_y = (problem.g_grad(y1) - problem.g_grad(yh)
           - t_y * (phi_grad(gen_y, y1) - phi_grad(gen_y, yh)))
    return p_x, p_y


def certify_subgradient_bound(problem, trace, varrho, tol_cert=1e-8, gen_x=None,
                              gen_y=None):
    """Flag every k with ``|(p_x, p_y)| > varrho |z_{k+1} - w_k| + tol``."""
    iterates, hats = _points(trace)
    gen_x = gen_x or trace.bregman_x
    gen_y = gen_y or trace.bregman_y
    report = CertificateReport(margins=np.empty(len(trace.rows)))
    for k, row in enumerate(trace.rows):
        p_x, p_y = subgradient_vectors(problem, iterates[k + 1], hats[k], gen_x, gen_y,
                                       row.t_x, row.t_y)
        lhs = float(np.sqrt(p_x @ p_x + p_y @ p_y))
        rhs = varrho * np.sqrt(_step_sq(iterates[k + 1], hats[k]))
        report.margins[k] = rhs - lhs
        if lhs > rhs + tol_cert:
            report.violations.append(k)
    return report
