"""Experiment presets and the seed-grid harness behind the CLI."""

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import bregman
from . import schedules as sched
from .errors import SumBoundViolation
from .problems import gen_logreg, gen_qp, logreg_problem, qp_problem
from .solver import Backtracking, SolverConfig, run

ALGORITHMS = ("asap", "aasap", "alg1", "alg1f", "alg2")
BREGMANS = ("is", "euclid")
SUMMARY_HEADER = ("experiment", "seed", "algorithm", "bregman", "bb", "n", "d", "mu",
                  "Iter", "Time", "Extrapolation", "converged")
TABLE_HEADER = ("algorithm", "bregman", "runs", "converged", "failed",
                "Iter_median", "Iter_iqr", "Time_median", "Time_iqr",
                "Extrapolation_median", "Extrapolation_iqr")

DESK = {"qp": {"n": 100}, "logreg": {"n": 200, "d": 50}}
FULL_SCALE = {"qp": {"n": 500}, "logreg": {"n": 500, "d": 200}}
DEFAULT_TOL = {"qp": 1e-4, "logreg": 1e-5}
ADAPTIVE_T = {"qp": 1.2, "logreg": 1.5}
QP_RADIUS = 2.0
LOGREG_START_SCALE = 0.05
LOGREG_FLIP_RATE = 0.25


@dataclass
class ExperimentConfig:
    experiment: str = "qp"
    algorithm: str = "alg2"
    bregman_x: str = "is"
    schedule_override: Optional[str] = None
    bb: bool = False
    n: Optional[int] = None
    d: Optional[int] = None
    seed: int = 0
    tol: Optional[float] = None
    max_iter: int = 100_000
    mu: Optional[float] = None
    out_dir: Optional[str] = None
    unsafe_schedule: bool = False
    keep_points: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in DESK:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.bregman_x not in BREGMANS:
            raise ValueError(f"unknown bregman kernel {self.bregman_x!r}")
        for key, val in DESK[self.experiment].items():
            if getattr(self, key) is None:
                setattr(self, key, val)
        if self.tol is None:
            self.tol = DEFAULT_TOL[self.experiment]

    @property
    def cell(self):
        return f"{self.algorithm}-{self.bregman_x}" + ("-bb" if self.bb else "")


def make_schedule(cfg):
    """Schedule for a preset: ASAP (0, 0), aASAP (0.3, 0), Alg1 (0.3, 0.2),
    Alg1(F) ratio (k-1)/(k+2), Alg2 adaptive from (0.3, 0.2)."""
    override = cfg.schedule_override
    if override == "fista":
        return sched.fista()
    if override == "ratio" or (override is None and cfg.algorithm == "alg1f"):
        if not cfg.unsafe_schedule:
            raise SumBoundViolation(
                "the ratio schedule exceeds alpha + beta < 1; pass --unsafe-schedule")
        return sched.ratio(enforce_sum_bound=False)
    if cfg.algorithm == "asap":
        return sched.constant(0.0, 0.0)
    if cfg.algorithm == "aasap":
        return sched.constant(0.3, 0.0)
    if cfg.algorithm == "alg2" and override is None:
        return sched.adaptive(0.3, 0.2, t_factor=ADAPTIVE_T[cfg.experiment])
    return sched.constant(0.3, 0.2)


def build(cfg):
    """Instance, problem, start point and solver config for one run."""
    rng = np.random.default_rng([cfg.seed, 1])
    if cfg.experiment == "qp":
        inst = gen_qp(cfg.n, QP_RADIUS, cfg.seed, mu=cfg.mu)
        lip = inst.lip_g
        v = rng.standard_normal(cfg.n)
        gy = bregman.squared_euclidean(bregman.LIPSCHITZ_SAFETY * max(lip, 1.0))
        if cfg.bregman_x == "is":
            # Hessian gamma/x^2 matches the Euclidean gamma at |x_i| = r/sqrt(n)
            scale = QP_RADIUS / np.sqrt(cfg.n)
            gx = bregman.itakura_saito(bregman.LIPSCHITZ_SAFETY * lip * scale ** 2,
                                       upper=QP_RADIUS)
            problem = qp_problem(inst, gx.domain_floor)
            v = np.abs(v) + gx.domain_floor
        else:
            gx = bregman.for_lipschitz("euclid", lip)
            problem = qp_problem(inst)
        x0 = 0.5 * QP_RADIUS * v / np.linalg.norm(v)
        backtracking = None
    else:
        kw = {} if cfg.mu is None else {"mu": cfg.mu}
        inst = gen_logreg(cfg.n, cfg.d, cfg.seed, flip_rate=LOGREG_FLIP_RATE, **kw)
        v = rng.standard_normal(cfg.d)
        gy = bregman.squared_euclidean(bregman.LIPSCHITZ_SAFETY)
        if cfg.bregman_x == "is":
            gx = bregman.itakura_saito(LOGREG_START_SCALE ** 2, upper=10.0)
            problem = logreg_problem(inst, gx.domain_floor)
            v = np.abs(v) + gx.domain_floor / LOGREG_START_SCALE
        else:
            gx = bregman.squared_euclidean(1.0)
            problem = logreg_problem(inst)
        x0 = LOGREG_START_SCALE * v
        backtracking = Backtracking(rho=2.0, delta=1e-5, t_min=1.3, use_bb=cfg.bb)
    solver_cfg = SolverConfig(gx, gy, make_schedule(cfg), tol=cfg.tol,
                              max_iter=cfg.max_iter, backtracking=backtracking,
                              keep_points=cfg.keep_points)
    return inst, problem, (x0, x0.copy()), solver_cfg


def run_experiment(cfg, write=True):
    """Run one preset on one seed. Returns ``(summary_row, trace)``.

    When ``write`` and ``cfg.out_dir`` is set, the trace goes to
    ``trace_<cell>_<seed>.csv`` and the row is appended to ``summary.csv``.
    """
    inst, problem, z0, solver_cfg = build(cfg)
    trace = run(problem, z0, solver_cfg)
    row = {"experiment": cfg.experiment, "seed": cfg.seed, "algorithm": cfg.algorithm,
           "bregman": cfg.bregman_x, "bb": int(cfg.bb), "n": cfg.n,
           "d": cfg.d if cfg.experiment == "logreg" else cfg.n, "mu": repr(inst.mu),
           "Iter": trace.iterations, "Time": f"{trace.wall_time_seconds:.6f}",
           "Extrapolation": trace.extrapolation_count,
           "converged": int(trace.converged)}
    if write and cfg.out_dir:
        os.makedirs(cfg.out_dir, exist_ok=True)
        trace.write_csv(os.path.join(cfg.out_dir, f"trace_{cfg.cell}_{cfg.seed}.csv"))
        append_summary(os.path.join(cfg.out_dir, "summary.csv"), [row])
    return row, trace


def append_summary(path, rows):
    new = not os.path.exists(path)
    with open(path, "a", newline="") as fh:
        w = csv.DictWriter(fh, SUMMARY_HEADER, lineterminator="\n")
        if new:
            w.writeheader()
        w.writerows(rows)


def _grid_job(cfg):
    try:
        row, trace = run_experiment(cfg, write=False)
        return cfg, row, trace, None
    except Exception as exc:  # a failing cell is recorded, not fatal
        return cfg, None, None, f"{type(exc).__name__}: {exc}"


def grid_configs(experiment, seeds, bb=False, bregmans=BREGMANS, **overrides):
    base = ExperimentConfig(experiment=experiment, unsafe_schedule=True, bb=bb, **overrides)
    return [replace(base, algorithm=alg, bregman_x=kind, seed=seed)
            for kind in bregmans for alg in ALGORITHMS for seed in seeds]


def _quartiles(vals):
    q1, med, q3 = np.percentile(vals, [25, 50, 75])
    return med, q3 - q1


def run_grid(experiment, seeds, out_dir=None, workers=1, bb=False, **overrides):
    """Every preset x kernel over ``seeds``; writes traces, summary and table.

    Returns the list of table rows (one per preset/kernel cell).
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seeds must be nonempty")
    cfgs = grid_configs(experiment, seeds, bb=bb, **overrides)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_grid_job, cfgs))
    else:
        results = [_grid_job(c) for c in cfgs]

    cells = {}
    summary_rows = []
    for cfg, row, trace, err in results:
        cell = cells.setdefault((cfg.algorithm, cfg.bregman_x), {"rows": [], "errors": []})
        if err is not None:
            cell["errors"].append(err)
            continue
        cell["rows"].append(row)
        summary_rows.append(row)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            trace.write_csv(os.path.join(out_dir, f"trace_{cfg.cell}_{cfg.seed}.csv"))

    table = []
    for (alg, kind), cell in cells.items():
        rows = cell["rows"]
        out = {"algorithm": alg, "bregman": kind, "runs": len(rows),
               "converged": sum(r["converged"] for r in rows),
               "failed": len(cell["errors"])}
        for col in ("Iter", "Time", "Extrapolation"):
            vals = [float(r[col]) for r in rows]
            med, iqr = _quartiles(vals) if vals else (float("nan"), float("nan"))
            out[f"{col}_median"], out[f"{col}_iqr"] = med, iqr
        table.append(out)
    if out_dir:
        append_summary(os.path.join(out_dir, "summary.csv"), summary_rows)
        with open(os.path.join(out_dir, "table.csv"), "w", newline="") as fh:
            w = csv.DictWriter(fh, TABLE_HEADER, lineterminator="\n")
            w.writeheader()
            w.writerows(table)
    return table
