import os

import pytest
from hypothesis import HealthCheck, settings

from nonsas.checker import canonical_domain, grid_domain
from nonsas.labeling import builtin_scheme

settings.register_profile(
    "default", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def canonical():
    return canonical_domain()


@pytest.fixture(scope="session")
def small():
    return grid_domain(3)


@pytest.fixture(params=["identity", "counterexample", "power"])
def any_scheme(request):
    return builtin_scheme(request.param)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import LEDGER

    if LEDGER:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LEDGER, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
