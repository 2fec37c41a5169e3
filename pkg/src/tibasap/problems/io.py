"""Plain-text instance files.

Layout: one header line of ``key=value`` tokens, then matrix rows as
whitespace-separated decimals with 17 significant digits. QP files hold the
``n`` rows of ``A`` followed by ``b``; logistic files hold one sample per row
with the label first.
"""

import numpy as np

from .logreg import LogRegInstance
from .qp import QpInstance

FMT = "%.17g"


def _row(values):
    return " ".join(FMT % v for v in values)


def dumps(inst):
    if isinstance(inst, QpInstance):
        head = (f"kind=qp n={inst.n} radius={FMT % inst.radius} "
                f"mu={FMT % inst.mu} seed={inst.seed}")
        lines = [head] + [_row(r) for r in inst.A] + [_row(inst.b)]
    elif isinstance(inst, LogRegInstance):
        head = (f"kind=logreg n={inst.n} d={inst.d} lam={FMT % inst.lam} "
                f"theta_cap={FMT % inst.theta_cap} mu={FMT % inst.mu} seed={inst.seed}")
        lines = [head] + [_row(np.concatenate(([lab], a)))
                          for lab, a in zip(inst.labels, inst.samples)]
    else:
        raise TypeError(f"cannot serialize {type(inst).__name__}")
    return "\n".join(lines) + "\n"


def loads(text):
    lines = text.strip("\n").split("\n")
    meta = dict(tok.split("=", 1) for tok in lines[0].split())
    seed = None if meta.get("seed", "None") == "None" else int(meta["seed"])
    rows = np.array([[float(v) for v in ln.split()] for ln in lines[1:]])
    if meta["kind"] == "qp":
        n = int(meta["n"])
        return QpInstance(rows[:n].copy(), rows[n].copy(), float(meta["radius"]),
                          float(meta["mu"]), seed)
    if meta["kind"] == "logreg":
        return LogRegInstance(rows[:, 1:].copy(), rows[:, 0].copy(),
                              float(meta["lam"]), float(meta["theta_cap"]),
                              float(meta["mu"]), seed)
    raise ValueError(f"unknown instance kind {meta['kind']!r}")


def save_instance(inst, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(inst))


def load_instance(path):
    with open(path) as fh:
        return loads(fh.read())
