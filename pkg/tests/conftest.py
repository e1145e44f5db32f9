import re

import pytest
from hypothesis import HealthCheck, settings

from godeaux.godeaux_data import derive_relations
from godeaux.qgeom import family_z3, family_z5, random_line

settings.register_profile("godeaux", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow,
                                                 HealthCheck.function_scoped_fixture])
settings.load_profile("godeaux")

P = 32233


@pytest.fixture(scope="session")
def relations():
    return derive_relations(P)


@pytest.fixture(scope="session")
def z5_line():
    return family_z5((1, 3), (2, 5))


@pytest.fixture(scope="session")
def z3_line():
    return family_z3((1, 2), (1, 2, 3, 4), (1, 1))


@pytest.fixture(scope="session")
def lines():
    return [random_line(s) for s in range(6)]


@pytest.fixture(scope="session")
def candidate(lines):
    from godeaux.construct import assemble, solve_second_step
    L = lines[0]
    return assemble(L, solve_second_step(L).generic(0))


# -- acceptance summary ------------------------------------------------------------

_CRITERIA: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[n] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n:2d}: {_CRITERIA[n]}")
