import random

import pytest

from bufsim import fixtures

ACCEPTANCE: dict = {}
CRITERIA = range(1, 9)


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611,
                     help="seed for the randomized suites")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def ex21():
    return fixtures.ex21_sigma()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in CRITERIA:
        ok, detail = ACCEPTANCE.get(key, (False, "did not complete"))
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'} - {detail}")
