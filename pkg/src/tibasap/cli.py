"""Command line harness: ``tibasap qp ...`` and ``tibasap logreg ...``.

Without ``--alg`` every preset is run on both kernels and ``table.csv`` is
written. Exit status: 0 if every run converged, 2 if some hit ``--max-iter``,
1 on configuration errors.
"""

import argparse
import logging
import sys

from .errors import SumBoundViolation
from .experiments import ALGORITHMS, FULL_SCALE, ExperimentConfig, run_experiment, run_grid

log = logging.getLogger("tibasap")


def _seeds(text):
    if "-" in text and "," not in text:
        lo, hi = text.split("-")
        return list(range(int(lo), int(hi) + 1))
    return [int(s) for s in text.split(",") if s]


def build_parser():
    p = argparse.ArgumentParser(prog="tibasap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="experiment", required=True)
    for name in ("qp", "logreg"):
        s = sub.add_parser(name)
        s.add_argument("--alg", choices=ALGORITHMS)
        s.add_argument("--bregman", choices=("is", "euclid"), default=None)
        s.add_argument("--schedule", choices=("fista", "ratio", "constant"), default=None)
        s.add_argument("--bb", action="store_true")
        s.add_argument("--n", type=int)
        s.add_argument("--d", type=int)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--seeds", type=_seeds,
                       help="comma list or inclusive range, e.g. 0-19")
        s.add_argument("--tol", type=float)
        s.add_argument("--max-iter", type=int, default=100_000)
        s.add_argument("--mu", type=float)
        s.add_argument("--out", default="results")
        s.add_argument("--paper-scale", action="store_true")
        s.add_argument("--unsafe-schedule", action="store_true",
                       help="allow schedules with alpha + beta >= 1")
        s.add_argument("--workers", type=int, default=1)
        s.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    sizes = {"n": args.n, "d": args.d}
    if args.paper_scale:
        for k, v in FULL_SCALE[args.experiment].items():
            sizes[k] = sizes[k] or v
    seeds = args.seeds or [args.seed]
    common = dict(tol=args.tol, max_iter=args.max_iter, mu=args.mu,
                  schedule_override=args.schedule, **sizes)

    if args.alg is None:
        bregmans = (args.bregman,) if args.bregman else ("is", "euclid")
        table = run_grid(args.experiment, seeds, out_dir=args.out, workers=args.workers,
                         bb=args.bb, bregmans=bregmans, **common)
        for row in table:
            log.info("%-6s %-6s Iter %.1f  Extrapolation %.1f  converged %d/%d",
                     row["algorithm"], row["bregman"], row["Iter_median"],
                     row["Extrapolation_median"], row["converged"], row["runs"])
        ok = all(r["failed"] == 0 and r["converged"] == r["runs"] for r in table)
        return 0 if ok else 2

    status = 0
    for seed in seeds:
        try:
            cfg = ExperimentConfig(experiment=args.experiment, algorithm=args.alg,
                                   bregman_x=args.bregman or "is", bb=args.bb,
                                   seed=seed, out_dir=args.out,
                                   unsafe_schedule=args.unsafe_schedule, **common)
            row, _ = run_experiment(cfg)
        except (SumBoundViolation, ValueError) as exc:
            print(f"tibasap: configuration error: {exc}", file=sys.stderr)
            return 1
        log.info("seed %d: Iter %d  Extrapolation %d  converged %d", seed,
                 row["Iter"], row["Extrapolation"], row["converged"])
        if not row["converged"]:
            status = 2
    return status


if __name__ == "__main__":
    sys.exit(main())
