import os

import pytest
from hypothesis import HealthCheck, settings

from gew.groups import GeneratingSet
from gew.parsing import parse_element, parse_group

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SEMIDIRECT = "semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})"


@pytest.fixture(scope="session")
def H():
    return parse_group(SEMIDIRECT)


@pytest.fixture(scope="session")
def U(H):
    return GeneratingSet(H, [parse_element(t, H) for t in ("(b,a)", "(c,a)", "(c^-1,a)", "(1,a)")])


@pytest.fixture
def el(H):
    return lambda text: parse_element(text, H)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
