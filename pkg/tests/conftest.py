import re

import pytest

from quadgor.catalog import catalog
from quadgor.field import GF, QQ
from quadgor.poly import PolyRing


@pytest.fixture(scope="session")
def ex42():
    return catalog("ex42").ring_presentation()


@pytest.fixture(scope="session")
def ex42_qq():
    return catalog("ex42").ring_presentation(field=QQ)


@pytest.fixture(scope="session")
def roos():
    return catalog("roos").ring_presentation()


@pytest.fixture(scope="session")
def ring3_qq():
    return PolyRing(QQ, ["x", "y", "z"])


@pytest.fixture(scope="session")
def ring3_p():
    return PolyRing(GF(32003), ["x", "y", "z"])


# --- acceptance-criterion ledger -------------------------------------------
# one PASS/FAIL line per criterion, printed at the end of every run so it
# survives pytest's output capture

_criterion_results = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call":
        _criterion_results[num] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _criterion_results[num] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for num in sorted(_criterion_results):
        outcome = _criterion_results[num]
        word = "PASS" if outcome == "passed" else "FAIL"
        desc = CRITERIA.get(num, "")
        terminalreporter.write_line(f"CRITERION {num}: {word} — {desc}")
