from pathlib import Path

import pytest

from copwin.constructions import cycle, path, petersen
from copwin.enumeration import generate_graphs
from copwin.graph import Graph

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def connected_by_order():
    """All connected graphs of order 1..7, one per isomorphism class."""
    return {n: list(generate_graphs(n, connected_only=True)) for n in range(1, 8)}


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def pete():
    return petersen()


@pytest.fixture
def p3():
    return path(3)


def two_edges() -> Graph:
    return Graph.from_edges(4, [(0, 1), (2, 3)])


# acceptance criteria report one line each in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
