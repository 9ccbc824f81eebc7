import random

import pytest

from omeganb.fixtures import robot, trap
from omeganb.solver import synthesize


@pytest.fixture(scope="session")
def robot_problem():
    return robot()


@pytest.fixture(scope="session")
def trap_problem():
    return trap()


@pytest.fixture(scope="session")
def robot_result(robot_problem):
    p = robot_problem
    return synthesize(p.plant, p.safety, p.liveness, p.min_accept)


@pytest.fixture(scope="session")
def robot_strategy_only(robot_problem):
    p = robot_problem
    return synthesize(p.plant, p.safety, p.liveness, p.min_accept, skip_markable=True)


@pytest.fixture
def rng():
    return random.Random(20240521)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
