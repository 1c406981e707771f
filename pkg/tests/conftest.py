import pytest
from hypothesis import strategies as st

from streamshare.core import build_problem, example_problem


@pytest.fixture
def ex1():
    return example_problem()


@st.composite
def problems(draw, max_artists=4, max_users=5, max_stream=6, min_artists=1, min_users=1):
    n = draw(st.integers(min_artists, max_artists))
    m = draw(st.integers(min_users, max_users))
    cols = []
    for _ in range(m):
        col = draw(st.lists(st.integers(0, max_stream), min_size=n, max_size=n)
                   .filter(lambda c: any(c)))
        cols.append(col)
    t = [[cols[c][r] for c in range(m)] for r in range(n)]
    return build_problem([str(k + 1) for k in range(n)], [f"u{k + 1}" for k in range(m)], t)


_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
