import os

import pytest
from hypothesis import HealthCheck, settings

from xlq.polycore import ModelParams

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GRID = [(1.0, 1), (2.5, 1), (1.0, 2), (3.0, 2), (1.5, 3)]

# criterion lines collected by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=GRID, ids=lambda gl: f"g{gl[0]:g}-l{gl[1]}")
def grid_params(request):
    return ModelParams(*request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
