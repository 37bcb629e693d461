import numpy as np
import pytest

from wavequanta.fields import DoubleSlitField, FringeGeometry


@pytest.fixture
def fig1_field():
    return DoubleSlitField(FringeGeometry(0.03, 5.0))


@pytest.fixture
def rand():
    return np.random.default_rng(20240531)


_CRITERIA: dict[str, str] = {}
_OUTCOMES: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    def register(key: str, text: str) -> None:
        _CRITERIA[request.node.nodeid] = f"{key} {text}"

    return register


def pytest_runtest_logreport(report):
    if report.nodeid in _CRITERIA or "test_acceptance" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            _OUTCOMES[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, text in sorted(_CRITERIA.items(), key=lambda kv: kv[1]):
        status = "PASS" if _OUTCOMES.get(nodeid) == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {text}")
