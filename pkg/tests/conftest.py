import pytest

from landauqm import kernels
from landauqm.params import NATURAL

_acceptance = {}


@pytest.fixture
def nat():
    return NATURAL


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    return request.param


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        status = "PASS" if _acceptance[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
