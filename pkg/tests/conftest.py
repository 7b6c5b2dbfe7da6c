from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from koszulkit.corpus import standard_corpus
from koszulkit.linalg import GF2, QQ, Field

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [QQ, GF2]
FIELD_IDS = ["Q", "F2"]


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(params=FIELDS, ids=FIELD_IDS)
def field(request) -> Field:
    return request.param



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
