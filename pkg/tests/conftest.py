import pytest

from literals import stick_phon_from_zero, stick_word


@pytest.fixture
def stick14():
    return stick_phon_from_zero()


@pytest.fixture
def stick():
    return stick_word()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
