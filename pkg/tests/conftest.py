import random

import pytest

from ksgraph import kernels

from helpers import cabello_frame, orthogonal_bases_in, small_ray_pool

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def cabello():
    return cabello_frame()


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20161016)


@pytest.fixture(scope="session")
def pools():
    out = {}
    for d in (3, 4):
        pool = small_ray_pool(d)
        out[d] = (pool, orthogonal_bases_in(pool, d))
    return out


@pytest.fixture
def acceptance_log():
    def log(criterion: str, passed: bool, detail: str = "") -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
