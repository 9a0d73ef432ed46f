import random

import pytest

from unirow import ring


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def sphere():
    return ring("Q", ["x", "y", "z"], ["x^2 + y^2 + z^2 - 1"])


@pytest.fixture(scope="session")
def f7():
    return ring("Fp:7")


@pytest.fixture(scope="session")
def f13():
    return ring("Fp:13")


@pytest.fixture(scope="session")
def qq():
    return ring("Q")


@pytest.fixture(scope="session")
def qt():
    return ring("Q", ["t"])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
