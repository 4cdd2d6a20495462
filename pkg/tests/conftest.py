from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def H4():
    from hopfgen.hopf import sweedler

    return sweedler()


@pytest.fixture(scope="session")
def alpha_abc():
    from hopfgen.cocycle import builtin_cocycle

    return builtin_cocycle("sweedler_abc")


@pytest.fixture(scope="session")
def G4(H4, alpha_abc):
    from hopfgen.generic import build_generic

    return build_generic(H4, alpha_abc)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
