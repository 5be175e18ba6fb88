import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lcadag.oracles import PRNG_ALGORITHM

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_criteria: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for n in getattr(report, "criteria", ()):
        _criteria[n] = _criteria.get(n, True) and report.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    tr.write_line(f"PRNG: {PRNG_ALGORITHM} (numpy {np.__version__})")
    for n in sorted(_criteria):
        tr.write_line(f"criterion {n:2d}: {'PASS' if _criteria[n] else 'FAIL'}")
