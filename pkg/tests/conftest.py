import sys

import pytest
from hypothesis import settings

from extremal.functions import BuildConfig, FunctionContext

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def ctx():
    """One default function context shared by every test (building it is the slow part)."""
    return FunctionContext(BuildConfig())


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
