import pytest

from skewbrace.constructors import corpus, worked_example_c4c2, worked_example_nonnilpotent_type
from skewbrace.groups import group_by_name

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria[number] = (text, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")


@pytest.fixture(scope="session")
def brace_corpus():
    return corpus(8)


@pytest.fixture(scope="session")
def ex1():
    return worked_example_nonnilpotent_type()


@pytest.fixture(scope="session")
def ex2():
    return worked_example_c4c2()


@pytest.fixture(scope="session")
def s3():
    return group_by_name("S3")
