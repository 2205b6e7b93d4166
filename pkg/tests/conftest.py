import numpy as np
import pytest

from pnglab.special.tracy_widom import tw_table


@pytest.fixture(scope="session")
def f2_table():
    return tw_table(2)


@pytest.fixture(scope="session")
def f1_table():
    return tw_table(1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mods = [m for name, m in sys.modules.items() if name.endswith("test_acceptance")]
    lines = getattr(mods[0], "RESULTS", []) if mods else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for ln in lines:
            terminalreporter.write_line(ln)
