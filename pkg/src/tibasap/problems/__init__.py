from .base import ProblemSpec
from .io import dumps, load_instance, loads, save_instance
from .logreg import (LogRegInstance, capped_l1_prox, capped_l1_value, gen_logreg,
                     logistic_value_grad, logreg_problem, logreg_solve_x,
                     logreg_solve_y)
from .qp import QpInstance, gen_qp, qp_problem, qp_solve_x, qp_solve_y, qp_value

__all__ = [
    "ProblemSpec", "QpInstance", "LogRegInstance", "gen_qp", "gen_logreg",
    "qp_problem", "qp_solve_x", "qp_solve_y", "qp_value", "logreg_problem",
    "logreg_solve_x", "logreg_solve_y", "logistic_value_grad", "capped_l1_prox",
    "capped_l1_value", "dumps", "loads", "save_instance", "load_instance",
]
