import numpy as np
import pytest
from hypothesis import settings

from dimerlab.permanent import permanent_ryser

# numba compilation makes the first example slow; deadlines would be flaky
settings.register_profile("dimerlab", deadline=None, max_examples=60)
settings.load_profile("dimerlab")

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    permanent_ryser(np.eye(3))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    def record(number, passed, detail):
        line = f"{'PASS' if passed else 'FAIL'} criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
