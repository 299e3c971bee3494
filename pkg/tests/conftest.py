import os

import pytest
from hypothesis import HealthCheck, settings

from gptlab import _kernels

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(params=sorted(_kernels.available_backends()))
def backend(request):
    """Run a test once per importable tableau kernel."""
    with _kernels.use_backend(request.param):
        yield request.param


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collect one pass/fail line per acceptance criterion for the summary."""
    def log(number, passed, text):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {text}"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
