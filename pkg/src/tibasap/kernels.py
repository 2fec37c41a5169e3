"""Hot per-coordinate kernels, each with a numba loop and a numpy twin.

The public names (``capped_l1_prox``, ``log_barrier_root``,
``log_barrier_ball_solve``) dispatch to the numba versions unless
``TIBASAP_DISABLE_NUMBA`` is set. Both variants are importable directly for
cross-checking and benchmarking.
"""

import numpy as np

from ._accel import USE_NUMBA, njit
from .errors import BisectionFailure

MAX_BISECTION = 200


# --------------------------------------------------------------------------
# capped-l1 proximal map
# --------------------------------------------------------------------------

@njit
def _capped_l1_prox_loop(u, weight, theta):
    out = np.empty_like(u)
    for j in range(u.shape[0]):
        uj = u[j]
        a = abs(uj)
        s = 1.0 if uj > 0 else (-1.0 if uj < 0 else 0.0)
        big = s * max(theta, a)
        small = s * min(theta, max(0.0, a - weight))
        h_big = weight * min(abs(big), theta) + 0.5 * (big - uj) ** 2
        h_small = weight * min(abs(small), theta) + 0.5 * (small - uj) ** 2
        out[j] = big if h_big < h_small else small
    return out


def _capped_l1_prox_numpy(u, weight, theta):
    a = np.abs(u)
    s = np.sign(u)
    big = s * np.maximum(theta, a)
    small = s * np.minimum(theta, np.maximum(0.0, a - weight))
    h_big = weight * np.minimum(np.abs(big), theta) + 0.5 * (big - u) ** 2
    h_small = weight * np.minimum(np.abs(small), theta) + 0.5 * (small - u) ** 2
    return np.where(h_big < h_small, big, small)


# --------------------------------------------------------------------------
# positive root of  a x^2 + b x - c = 0  (a > 0, c > 0), clipped at a floor
# --------------------------------------------------------------------------

@njit
def _log_barrier_root_loop(a, b, c, floor):
    out = np.empty_like(b)
    for i in range(b.shape[0]):
        bi = b[i]
        disc = np.sqrt(bi * bi + 4.0 * a * c)
        if bi >= 0.0:
            r = 2.0 * c / (bi + disc)
        else:
            r = (disc - bi) / (2.0 * a)
        out[i] = r if r > floor else floor
    return out


def _log_barrier_root_numpy(a, b, c, floor):
    disc = np.sqrt(b * b + 4.0 * a * c)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(b >= 0.0, 2.0 * c / (b + disc), (disc - b) / (2.0 * a))
    return np.maximum(r, floor)


# --------------------------------------------------------------------------
# ball-constrained log-barrier prox:
#   min_x  mu/2 |x - center|^2 + c * sum(x/xh - ln(x/xh) - 1)
#   s.t.   |x| <= radius,  x >= floor
# per coordinate: (mu + nu) x^2 + (c/xh - mu*center) x - c = 0
# --------------------------------------------------------------------------

@njit
def _norm_at(nu, mu, lin, c, floor, buf):
    a = mu + nu
    s = 0.0
    for i in range(lin.shape[0]):
        bi = lin[i]
        disc = np.sqrt(bi * bi + 4.0 * a * c)
        if bi >= 0.0:
            r = 2.0 * c / (bi + disc)
        else:
            r = (disc - bi) / (2.0 * a)
        if r < floor:
            r = floor
        buf[i] = r
        s += r * r
    return np.sqrt(s)


@njit
def _ball_solve_loop(center, x_hat, mu, c, radius, floor):
    n = center.shape[0]
    lin = np.empty(n)
    for i in range(n):
        lin[i] = c / x_hat[i] - mu * center[i]
    buf = np.empty(n)
    if _norm_at(0.0, mu, lin, c, floor, buf) <= radius:
        return buf, 0.0, 0
    lo = 0.0
    hi = max(mu, 1.0)
    it = 0
    while _norm_at(hi, mu, lin, c, floor, buf) > radius:
        lo = hi
        hi *= 2.0
        it += 1
        if it >= MAX_BISECTION:
            return buf, hi, -1
    for _ in range(MAX_BISECTION):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _norm_at(mid, mu, lin, c, floor, buf) > radius:
            lo = mid
        else:
            hi = mid
        it += 1
    _norm_at(hi, mu, lin, c, floor, buf)
    return buf, hi, it


def _ball_solve_numpy(center, x_hat, mu, c, radius, floor):
    lin = c / x_hat - mu * center

    def at(nu):
        x = _log_barrier_root_numpy(mu + nu, lin, c, floor)
        return x, np.sqrt(x @ x)

    x, nrm = at(0.0)
    if nrm <= radius:
        return x, 0.0, 0
    lo, hi = 0.0, max(mu, 1.0)
    it = 0
    while at(hi)[1] > radius:
        lo, hi = hi, 2.0 * hi
        it += 1
        if it >= MAX_BISECTION:
            return at(hi)[0], hi, -1
    for _ in range(MAX_BISECTION):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if at(mid)[1] > radius:
            lo = mid
        else:
            hi = mid
        it += 1
    return at(hi)[0], hi, it


# --------------------------------------------------------------------------
# public dispatch
# --------------------------------------------------------------------------

if USE_NUMBA:
    _prox_impl = _capped_l1_prox_loop
    _root_impl = _log_barrier_root_loop
    _ball_impl = _ball_solve_loop
else:
    _prox_impl = _capped_l1_prox_numpy
    _root_impl = _log_barrier_root_numpy
    _ball_impl = _ball_solve_numpy


def capped_l1_prox_kernel(u, weight, theta):
    return _prox_impl(np.ascontiguousarray(u, dtype=np.float64),
                      float(weight), float(theta))


def log_barrier_root(a, b, c, floor=0.0):
    """Positive root of ``a x**2 + b x - c`` per entry of ``b``, at least ``floor``."""
    return _root_impl(float(a), np.ascontiguousarray(b, dtype=np.float64),
                      float(c), float(floor))


def log_barrier_ball_solve(center, x_hat, mu, c, radius, floor):
    """Return ``(x, nu)`` solving the ball-constrained log-barrier prox.

    ``nu`` is the multiplier of the ball constraint; it is zero when the
    unconstrained root already lies in the ball.
    """
    x, nu, it = _ball_impl(np.ascontiguousarray(center, dtype=np.float64),
                           np.ascontiguousarray(x_hat, dtype=np.float64),
                           float(mu), float(c), float(radius), float(floor))
    if it < 0:
        raise BisectionFailure(
            f"could not bracket the ball multiplier within {MAX_BISECTION} doublings")
    return x, float(nu)
