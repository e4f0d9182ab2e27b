from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from builders import (
    BARRIER_PROV,
    BLOCKING_PROV,
    KAPPA5_PROV,
    NESTED_PROV,
    from_prov,
    qprq_o1t,
)

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def q403():
    return qprq_o1t(4, 0, 3)


@pytest.fixture(scope="session")
def q404():
    return qprq_o1t(4, 0, 4)


@pytest.fixture(scope="session")
def kappa5():
    return from_prov(KAPPA5_PROV)


@pytest.fixture(scope="session")
def nested():
    return from_prov(NESTED_PROV)


@pytest.fixture(scope="session")
def barrier():
    return from_prov(BARRIER_PROV)


@pytest.fixture(scope="session")
def blocking():
    return from_prov(BLOCKING_PROV)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
