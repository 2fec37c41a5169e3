import math

import numpy as np
import pytest

from tibasap import bregman
from tibasap.bregman import bregman_distance
from tibasap.errors import DomainViolation, UnsupportedGenerator
from tibasap.kernels import log_barrier_ball_solve
from tibasap.oracles import GridSpec, fd_gradient, grid_argmin_1d, perturbation_optimality
from tibasap.problems import (LogRegInstance, QpInstance, capped_l1_prox, capped_l1_value,
                              gen_logreg, gen_qp, logistic_value_grad, logreg_problem,
                              logreg_solve_x, logreg_solve_y, qp_problem, qp_solve_x,
                              qp_solve_y, qp_value)
from tibasap.problems.io import dumps, load_instance, loads, save_instance

EUC = bregman.squared_euclidean
IS = bregman.itakura_saito


def _trivial_qp(n=2, mu=1.0, radius=2.0):
    return QpInstance(np.zeros((n, n)), np.zeros(n), radius, mu)


class TestGenerators:
    def test_qp_determinism_and_symmetry(self):
        a, b = gen_qp(30, seed=7), gen_qp(30, seed=7)
        np.testing.assert_array_equal(a.A, b.A)
        np.testing.assert_array_equal(a.b, b.b)
        assert np.max(np.abs(a.A - a.A.T)) == 0
        assert a.mu == pytest.approx(10 * np.linalg.norm(a.A, 2))
        assert not np.array_equal(a.A, gen_qp(30, seed=8).A)

    def test_qp_full_scale_family(self):
        inst = gen_qp(500, radius=2.0, seed=0)
        assert inst.A.shape == (500, 500) and inst.radius == 2.0

    def test_logreg_defaults(self):
        inst = gen_logreg(seed=1)
        assert (inst.n, inst.d) == (500, 200)
        assert inst.lam == 1e-3 and inst.theta_cap == pytest.approx(1e-4)
        assert set(np.unique(inst.labels)) <= {-1.0, 1.0}
        again = gen_logreg(seed=1)
        np.testing.assert_array_equal(inst.samples, again.samples)
        np.testing.assert_array_equal(inst.labels, again.labels)

    def test_instance_validation(self):
        with pytest.raises(ValueError):
            QpInstance(np.array([[0.0, 1.0], [0.0, 0.0]]), np.zeros(2), 1.0, 1.0)
        with pytest.raises(ValueError):
            LogRegInstance(np.zeros((2, 2)), np.array([1.0, 0.0]))


class TestQp:
    def test_y_step_example(self):
        inst = _trivial_qp()
        y = qp_solve_y(inst, np.array([2.0, 0.0]), np.zeros(2), EUC(1.0))
        np.testing.assert_array_equal(y, [1.0, 0.0])

    def test_y_step_rejects_is(self):
        with pytest.raises(UnsupportedGenerator):
            qp_solve_y(_trivial_qp(), np.ones(2), np.ones(2), IS(1.0))

    def test_y_step_stationarity_and_optimality(self, rng):
        for seed in range(20):
            inst = gen_qp(6, seed=seed)
            gen = EUC(1.1 * inst.lip_g)
            x, yh = rng.normal(size=6), rng.normal(size=6)
            y = qp_solve_y(inst, x, yh, gen)
            lam = gen.gamma
            res = inst.mu * (y - x) + inst.A @ yh + inst.b + lam * (y - yh)
            assert np.linalg.norm(res) < 1e-10

            def obj(v):
                return (0.5 * inst.mu * np.sum((x - v) ** 2) + (inst.A @ yh + inst.b) @ v
                        + bregman_distance(gen, v, yh))
            assert perturbation_optimality(obj, y, trials=200, magnitude=1e-4, seed=seed)

    def test_x_step_euclid_examples(self):
        inst = _trivial_qp()
        p = np.array([0.5, 0.0])
        np.testing.assert_array_equal(qp_solve_x(inst, p, p, EUC(1.0)), p)
        p = np.array([4.0, 0.0])
        np.testing.assert_allclose(qp_solve_x(inst, p, p, EUC(1.0)), [2.0, 0.0])

    def test_x_step_is_one_dimensional(self):
        inst = _trivial_qp(1)
        gen = IS(1.0, upper=2.0)
        x = qp_solve_x(inst, np.array([1.0]), np.array([1.0]), gen)
        assert x[0] == pytest.approx(1.0, abs=1e-12)

        def obj(v):
            return 0.5 * (v - 1.0) ** 2 + (v - np.log(v) - 1.0)
        arg, _ = grid_argmin_1d(obj, GridSpec(1e-6, 2.0, 1e-6))
        assert abs(arg - x[0]) <= 1e-6

    def test_x_step_is_rejects_bad_hat(self):
        with pytest.raises(DomainViolation):
            qp_solve_x(_trivial_qp(), np.ones(2), np.array([1.0, 0.0]), IS(1.0))

    def test_x_step_is_kkt(self, rng):
        for seed in range(20):
            inst = gen_qp(6, radius=rng.uniform(0.3, 2.0), seed=seed)
            gen = IS(0.5, upper=inst.radius)
            yh = rng.normal(size=6)
            xh = rng.uniform(0.01, 0.2, 6)
            x, nu = log_barrier_ball_solve(yh, xh, inst.mu, gen.gamma, inst.radius,
                                           gen.domain_floor)
            np.testing.assert_array_equal(x, qp_solve_x(inst, yh, xh, gen))
            grad = inst.mu * (x - yh) + gen.gamma * (1 / xh - 1 / x) + nu * x
            free = x > gen.domain_floor
            assert np.max(np.abs(grad[free]), initial=0.0) < 1e-10 * inst.mu
            assert np.all(grad[~free] >= -1e-10 * inst.mu)
            assert abs(nu * (np.linalg.norm(x) - inst.radius)) < 1e-10 * (1 + nu)

    def test_penalty_vanishes_on_constraint(self, small_qp, rng):
        y = rng.normal(size=small_qp.n)
        y *= 1.5 / np.linalg.norm(y)
        ref = 0.5 * y @ small_qp.A @ y + small_qp.b @ y
        assert qp_value(small_qp, y, y) == pytest.approx(ref, rel=1e-14)
        assert qp_value(small_qp, 3 * y, y) == np.inf

    def test_problem_value_matches(self, small_qp, rng):
        prob = qp_problem(small_qp)
        x = rng.normal(size=small_qp.n) * 0.2
        y = rng.normal(size=small_qp.n)
        split = prob.f_value(x) + prob.q_value(x, y) + prob.g_value(y)
        assert prob.value(x, y) == pytest.approx(split, rel=1e-13)
        np.testing.assert_allclose(prob.g_grad(y), fd_gradient(prob.g_value, y),
                                   rtol=1e-5, atol=1e-7)


class TestLogReg:
    def test_value_grad_at_zero(self, small_logreg):
        f, g = logistic_value_grad(small_logreg, np.zeros(small_logreg.d))
        assert f == pytest.approx(math.log(2), rel=1e-15)
        ref = -(small_logreg.samples.T @ small_logreg.labels) / (2 * small_logreg.n)
        np.testing.assert_allclose(g, ref, rtol=1e-14, atol=1e-16)

    def test_fd_gradient(self, small_logreg, rng):
        for _ in range(50):
            x = rng.normal(size=small_logreg.d)
            _, g = logistic_value_grad(small_logreg, x)
            num = fd_gradient(lambda v: logistic_value_grad(small_logreg, v)[0], x)
            np.testing.assert_allclose(g, num, rtol=1e-5, atol=1e-9)

    def test_large_margin_limit(self):
        inst = LogRegInstance(np.array([[1.0]]), np.array([1.0]))
        vals = [logistic_value_grad(inst, np.array([t]))[0] for t in (1, 10, 100, 1e3, 1e5)]
        assert all(np.isfinite(vals)) and vals == sorted(vals, reverse=True)
        assert vals[-1] < 1e-40
        assert np.isfinite(logistic_value_grad(inst, np.array([-1e5]))[0])

    def test_convexity(self, small_logreg, rng):
        for _ in range(200):
            x, x2 = rng.normal(size=(2, small_logreg.d)) * 3
            f, g = logistic_value_grad(small_logreg, x)
            f2, _ = logistic_value_grad(small_logreg, x2)
            assert f2 >= f + g @ (x2 - x) - 1e-10

    def test_prox_trivial_cases(self, rng):
        assert capped_l1_prox(np.zeros(3), 0.5, 0.2).tolist() == [0, 0, 0]
        u = rng.normal(size=50)
        np.testing.assert_array_equal(capped_l1_prox(u, 0.0, 0.2), u)

    def test_prox_matches_grid_example(self):
        u, w, th = 0.5, 0.3, 0.2
        arg, _ = grid_argmin_1d(lambda y: w * np.minimum(np.abs(y), th) + 0.5 * (y - u) ** 2,
                                GridSpec(-2.0, 2.0, 1e-4))
        assert capped_l1_prox(np.array([u]), w, th)[0] == pytest.approx(arg, abs=1e-4)

    def test_prox_tie_takes_smaller_magnitude(self):
        # |u| = cap + w/2 makes both candidates score w*cap exactly
        w, cap, u = 0.5, 1.0, 1.25
        big, small = u, u - w

        def h(y):
            return w * min(abs(y), cap) + 0.5 * (y - u) ** 2
        assert h(big) == h(small) == 0.5
        assert capped_l1_prox(np.array([u, -u]), w, cap).tolist() == [small, -small]

    def test_x_step_euclid(self, small_logreg, rng):
        gen = EUC(1.0)
        d = small_logreg.d
        yh, xh = rng.normal(size=(2, d))
        g = np.zeros(d)
        x = logreg_solve_x(small_logreg, yh, xh, g, gen, 2.0)
        np.testing.assert_allclose(x, (small_logreg.mu * yh + 2 * xh) / (small_logreg.mu + 2))
        _, g = logistic_value_grad(small_logreg, xh)
        x = logreg_solve_x(small_logreg, yh, xh, g, gen, 2.0)
        res = small_logreg.mu * (x - yh) + g + 2.0 * (x - xh)
        assert np.linalg.norm(res) < 1e-10

    def test_x_step_is_one_dimensional(self):
        inst = LogRegInstance(np.array([[1.0]]), np.array([1.0]), mu=1.0)
        x = logreg_solve_x(inst, np.array([1.0]), np.array([1.0]), np.zeros(1),
                           IS(1.0, upper=10.0), 1.0)
        assert x[0] == pytest.approx(1.0, abs=1e-14)
        arg, _ = grid_argmin_1d(lambda v: 0.5 * (v - 1) ** 2 + v - np.log(v) - 1,
                                GridSpec(1e-6, 10.0, 1e-6))
        assert abs(arg - 1.0) <= 1e-6

    def test_x_step_is_rejects_bad_hat(self, small_logreg):
        with pytest.raises(DomainViolation):
            logreg_solve_x(small_logreg, np.ones(6), -np.ones(6), np.zeros(6), IS(1.0), 1.0)

    def test_y_step(self, small_logreg, rng):
        d = small_logreg.d
        x, yh = rng.normal(size=(2, d))
        gen = EUC(1.1)
        with pytest.raises(UnsupportedGenerator):
            logreg_solve_y(small_logreg, x, yh, IS(1.0))
        zero_lam = LogRegInstance(small_logreg.samples, small_logreg.labels, lam=1e-300)
        u = (1.1 * yh + x) / 2.1
        np.testing.assert_allclose(logreg_solve_y(zero_lam, x, yh, gen), u, rtol=1e-14)
        stiff = LogRegInstance(small_logreg.samples, small_logreg.labels, mu=1e8)
        np.testing.assert_allclose(logreg_solve_y(stiff, x, yh, gen), x, atol=1e-6)

    def test_y_step_perturbation(self, small_logreg, rng):
        gen = EUC(1.1)
        inst = small_logreg
        for seed in range(10):
            x, yh = rng.normal(size=(2, inst.d)) * 1e-3
            y = logreg_solve_y(inst, x, yh, gen)

            def obj(v):
                return (capped_l1_value(v, inst.lam, inst.theta_cap)
                        + 0.5 * inst.mu * np.sum((x - v) ** 2)
                        + bregman_distance(gen, v, yh))
            assert perturbation_optimality(obj, y, trials=500, magnitude=1e-5, seed=seed)

    def test_problem_split(self, small_logreg, rng):
        prob = logreg_problem(small_logreg)
        x, y = rng.normal(size=(2, small_logreg.d))
        assert prob.value(x, y) == pytest.approx(
            prob.f_value(x) + prob.q_value(x, y), rel=1e-14)


class TestIo:
    def test_round_trip(self, small_qp, small_logreg, tmp_path):
        for inst in (small_qp, small_logreg):
            back = loads(dumps(inst))
            assert type(back) is type(inst)
            assert dumps(back) == dumps(inst)
            path = tmp_path / "inst.txt"
            save_instance(inst, path)
            again = load_instance(path)
            for name in ("A", "b", "samples", "labels"):
                if hasattr(inst, name):
                    np.testing.assert_array_equal(getattr(again, name), getattr(inst, name))
        assert dumps(small_qp).splitlines()[0].startswith("kind=qp n=8")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            loads("kind=lp n=1\n1\n")
        with pytest.raises(TypeError):
            dumps(object())
