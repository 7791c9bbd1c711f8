import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from hypothesis import strategies as st  # noqa: E402

from wak.core import GamePosition  # noqa: E402

_acceptance = []


@st.composite
def positions(draw, max_vertices=5, max_weight=3, min_vertices=0, prefix="v"):
    n = draw(st.integers(min_vertices, max_vertices))
    names = [f"{prefix}{i}" for i in range(n)]
    weights = {v: draw(st.integers(0, max_weight)) for v in names}
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    edges = [e for e in pairs if draw(st.booleans())]
    loops = [v for v in names if draw(st.integers(0, 9)) < 3]
    return GamePosition(weights, edges, loops)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
