import pytest

from weakclock.grid import UniformGrid

_CRITERIA = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, text = marker.args
        _CRITERIA.append((number, text, rep.passed))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed in sorted(_CRITERIA):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {text}")


@pytest.fixture(scope="session")
def clock_grid():
    return UniformGrid(-20.0, 20.0, 4096)


@pytest.fixture(scope="session")
def z_grid():
    return UniformGrid(-12.0, 12.0, 2048)
