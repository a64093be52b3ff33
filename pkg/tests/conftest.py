import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# acceptance results, printed as one line per criterion at the end of the run
ACCEPTANCE: list = []


@pytest.fixture
def record():
    """Log one acceptance result: ``record(criterion, ok, detail)``; returns ``ok``."""
    def _record(crit, ok, detail):
        ok = bool(ok)
        ACCEPTANCE.append((crit, ok, detail))
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {crit}: {detail}", flush=True)
        return ok
    return _record


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {crit}: {detail}")
