import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if item.module.__name__.endswith("test_acceptance") and item.function.__doc__:
            _ACCEPTANCE[item.nodeid] = (item.function.__doc__.strip().splitlines()[0], "not run")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.nodeid not in _ACCEPTANCE:
        return
    title, status = _ACCEPTANCE[item.nodeid]
    if rep.failed:
        status = "FAIL"
    elif rep.when == "call" and rep.passed and status != "FAIL":
        status = "PASS"
    _ACCEPTANCE[item.nodeid] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for title, status in _ACCEPTANCE.values():
        terminalreporter.write_line(f"{status:7} {title}")
