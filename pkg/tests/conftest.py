from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from excepta import DynkinType, build

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=150,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

SMALL_TYPES = [
    DynkinType(f, n)
    for f, ranks in (("A", range(1, 6)), ("B", range(2, 6)), ("C", range(3, 6)), ("D", range(4, 6)))
    for n in ranks
] + [DynkinType("G", 2), DynkinType("F", 4)]

ALL_EXCEPTIONAL = [DynkinType("G", 2), DynkinType("F", 4), DynkinType("E", 6), DynkinType("E", 7), DynkinType("E", 8)]


@pytest.fixture(params=SMALL_TYPES, ids=str)
def small_rs(request):
    return build(request.param)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
