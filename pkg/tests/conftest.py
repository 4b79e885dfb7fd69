from __future__ import annotations

from collections import defaultdict

import pytest
from hypothesis import settings

from lamination import golden
from lamination.iet import IET, induce
from lamination.bratteli import state_vector

settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")

_criteria: dict[int, list[bool]] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n, title = mark.args
        _titles[n] = title
        _criteria[n].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status = "PASS" if all(_criteria[n]) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {_titles[n]}")


@pytest.fixture(scope="session")
def golden_diagram():
    return golden.diagram()


@pytest.fixture(scope="session")
def golden_iet(golden_diagram):
    sv = state_vector(golden_diagram)
    return IET.from_permutation(sv.exact, (2, 1))


@pytest.fixture(scope="session")
def golden_trace(golden_iet):
    return induce(golden_iet, 64)
