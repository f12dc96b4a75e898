import sys
from pathlib import Path

import pytest

from oax.interval import AxisConstraint
from oax.model import Operator
from oax.profile import AxisProfile, default_profile

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
sys.path.insert(0, str(HERE))

OPS = {"=": Operator.EQ, "<": Operator.LT, "<=": Operator.LTEQ, ">": Operator.GT, ">=": Operator.GTEQ}


def op(name, profile=None):
    """Axis operand by alias or local name (``width``, ``spatialCoordinatesLatitude``)."""
    found = (profile or default_profile()).resolve(name)
    assert found is not None, name
    return found


def ac(name, sym, value, profile=None):
    return AxisConstraint(op(name, profile), OPS[sym], value)


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def discrete_profile():
    return AxisProfile.standard(discrete=["width", "height", "x"])


# -- acceptance summary: one PASS/FAIL/SKIP line per criterion ----------------------

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    doc = (item.function.__doc__ or "").strip().splitlines()[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        if report.skipped and isinstance(report.longrepr, tuple):
            doc += f" ({report.longrepr[2].removeprefix('Skipped: ')})"
        # a criterion spread over several tests passes only if all of them do
        prev = _CRITERIA.get(number)
        if prev is None or prev[0] == "PASS" or status == "FAIL":
            _CRITERIA[number] = (status, doc)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, doc = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {doc}")
