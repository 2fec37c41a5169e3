"""Compare the numba kernels with their pure-numpy fallbacks.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``. Both
implementations are called directly, so the ``TIBASAP_DISABLE_NUMBA`` flag
does not matter here; the first numba call (compilation) is excluded.
"""

import argparse
import time

import numpy as np

from tibasap import kernels as K
from tibasap import oracles as O


def _best(fn, args, repeat):
    fn(*args)
    best = np.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def cases(rng):
    u = rng.uniform(-3, 3, 100_000)
    yield "capped-l1 prox (1e5 coords)", K._capped_l1_prox_loop, K._capped_l1_prox_numpy, \
        (u, 0.3, 0.2)
    b = rng.normal(size=100_000) * 10
    yield "log-barrier root (1e5 coords)", K._log_barrier_root_loop, K._log_barrier_root_numpy, \
        (2.0, b, 0.7, 1e-6)
    c = rng.normal(size=500)
    xh = rng.uniform(0.01, 0.2, 500)
    yield "ball bisection (n=500)", K._ball_solve_loop, K._ball_solve_numpy, \
        (c, xh, 50.0, 0.5, 2.0, 1e-6)
    m = 2000
    args = (rng.uniform(-3, 3, m), rng.uniform(0.01, 1, m), rng.uniform(0.01, 2, m), 1e-4)
    yield "capped-l1 grid oracle (2000 scalars)", O._capped_grid_loop, O._capped_grid_numpy, args


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':40s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, fast, slow, a in cases(rng):
        tf = _best(fast, a, args.repeat)
        ts = _best(slow, a, args.repeat)
        print(f"{name:40s} {1e3 * tf:11.3f} {1e3 * ts:11.3f} {ts / tf:8.1f}x")


if __name__ == "__main__":
    main()
