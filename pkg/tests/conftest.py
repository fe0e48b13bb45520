import pytest

from xhahnjacobi.family import FamilySpec

# criterion number -> (title, outcome); filled by the report hook below
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")


@pytest.fixture
def hahn_spec():
    return FamilySpec(-2, -1, (1, 2), {0: 2}, 8)


@pytest.fixture
def hahn_spec_two():
    return FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3}, 9)


@pytest.fixture
def jacobi_spec():
    return FamilySpec(-2, -1, (1, 2), {0: 2})


@pytest.fixture
def jacobi_spec_two():
    return FamilySpec(-2, -2, (2, 3), {0: 2, 1: 3})
