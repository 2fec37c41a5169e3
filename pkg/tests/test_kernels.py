"""The numba loops and their numpy twins must agree."""

import numpy as np
import pytest

from tibasap import kernels as K
from tibasap.errors import BisectionFailure


def _loop(fn):
    return getattr(fn, "py_func", fn)


@pytest.mark.parametrize("compiled", [True, False])
def test_prox_parity(rng, compiled):
    loop = K._capped_l1_prox_loop if compiled else _loop(K._capped_l1_prox_loop)
    for _ in range(20):
        u = rng.uniform(-3, 3, 500)
        w, th = rng.uniform(0.01, 1), rng.uniform(0.01, 2)
        np.testing.assert_array_equal(loop(u, w, th), K._capped_l1_prox_numpy(u, w, th))


def test_root_parity(rng):
    for _ in range(20):
        a, c = rng.uniform(0.1, 5), rng.uniform(0.1, 5)
        b = rng.normal(size=300) * 10
        got = K._log_barrier_root_loop(a, b, c, 1e-6)
        ref = K._log_barrier_root_numpy(a, b, c, 1e-6)
        np.testing.assert_allclose(got, ref, rtol=1e-14)


def test_root_solves_quadratic(rng):
    a, c = 2.0, 0.7
    b = rng.normal(size=1000) * 100
    x = K.log_barrier_root(a, b, c)
    assert np.all(x > 0)
    np.testing.assert_allclose(a * x * x + b * x - c, 0.0, atol=1e-12 * (1 + np.abs(b) * x).max())


def test_root_floor():
    x = K.log_barrier_root(1.0, np.array([1e12]), 1e-3, floor=1e-6)
    assert x[0] == 1e-6


@pytest.mark.parametrize("radius", [0.1, 1.0, 50.0])
def test_ball_parity(rng, radius):
    n = 20
    center = rng.normal(size=n)
    x_hat = rng.uniform(0.01, 1.0, n)
    x1, nu1, it1 = K._ball_solve_loop(center, x_hat, 3.0, 0.5, radius, 1e-6)
    x2, nu2, it2 = K._ball_solve_numpy(center, x_hat, 3.0, 0.5, radius, 1e-6)
    assert it1 >= 0 and it2 >= 0
    np.testing.assert_allclose(x1, x2, rtol=1e-12)
    assert nu1 == pytest.approx(nu2, rel=1e-10, abs=1e-12)
    assert np.linalg.norm(x1) <= radius * (1 + 1e-12)


def test_ball_multiplier_complementarity(rng):
    for _ in range(50):
        n = 10
        center = rng.normal(size=n) * 3
        x_hat = rng.uniform(0.01, 2.0, n)
        r = rng.uniform(0.2, 3.0)
        x, nu = K.log_barrier_ball_solve(center, x_hat, 2.0, 0.3, r, 1e-6)
        assert nu >= 0
        assert abs(nu * (np.linalg.norm(x) - r)) < 1e-10 * (1 + nu)


def test_ball_failure_reported():
    with pytest.raises(BisectionFailure):
        K.log_barrier_ball_solve(np.ones(4), np.ones(4), 1.0, 1.0, 1e-9, 1e-6)
