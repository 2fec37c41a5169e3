import numpy as np
import pytest

from tibasap import bregman
from tibasap.problems import gen_logreg, gen_qp


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_qp():
    return gen_qp(8, radius=2.0, seed=3)


@pytest.fixture
def small_logreg():
    return gen_logreg(40, 6, seed=4)


@pytest.fixture(params=["euclid", "is"])
def generator(request):
    if request.param == "euclid":
        return bregman.squared_euclidean(1.7)
    return bregman.itakura_saito(1.3, floor=1e-6, upper=5.0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
