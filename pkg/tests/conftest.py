import pytest

from tournament_rules import Tournament, gen_family

_acceptance: list[tuple[str, str]] = []


@pytest.fixture
def cycle3():
    return gen_family("cycle3")


@pytest.fixture
def bracket_pair():
    """The pair of {a, b}-adjacent tournaments from the bracket counterexample, a..d = 0..3."""
    t = Tournament.from_wins(4, {0: [1], 1: [2], 2: [0, 3], 3: [0, 1]})
    return t, t.flip_match(0, 1)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.failed):
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
