import math

import numpy as np
import pytest

from lostatsea import Strategy2, Strategy3

OPT2 = Strategy2(1.0432668686, 1.3734935859)
OPT3 = Strategy3(1.0255050653, 1.4909825316, 0.5306340577, 2.7495709960)
FIG2 = Strategy2(1.0433, math.radians(78.7))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ROWS
    if ROWS:
        terminalreporter.section("acceptance criteria")
        for row in sorted(ROWS, key=lambda r: r.number):
            terminalreporter.write_line(row.line())
