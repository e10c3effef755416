import random

import pytest

from iwahori.arith import get_field


@pytest.fixture
def F5():
    return get_field(5, 1, 32)


@pytest.fixture
def F4():
    # F_2[t]/(t^2+t+1)
    return get_field(2, 2, 32)


@pytest.fixture
def F3():
    return get_field(3, 1, 32)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: the acceptance criteria")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
