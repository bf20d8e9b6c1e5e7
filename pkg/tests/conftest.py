import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tsperfect.hypercube import VectorSet  # noqa: E402
from tsperfect.metrics import ball, hamming_table  # noqa: E402
from tsperfect.tilings import Tiling  # noqa: E402

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def repetition_tiling():
    """Radius-1 Hamming ball of F_2^3 tiled by the repetition code."""
    tile = ball(hamming_table(3), 0, 1)
    return Tiling(3, tile, VectorSet(3, frozenset({0, 0b111})))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    prev = _criteria.get(number)
    if prev is None or prev[0] == "PASS":
        _criteria[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
