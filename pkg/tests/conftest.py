from __future__ import annotations

import itertools
import os

import pytest
from hypothesis import HealthCheck, settings

from tatelocal.localfield.testfunction import MultiplicativeTestFunction

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

BUMP_CENTERS = (1.0, 2.0, 5.0)
BUMP_WIDTHS = (0.2, 0.5, 1.0)
BUMP_MATRIX = tuple(MultiplicativeTestFunction.bump(u, L) for u, L in itertools.product(BUMP_CENTERS, BUMP_WIDTHS))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def bumps():
    return BUMP_MATRIX


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
