import itertools
import random

import pytest

import lrlink
from lrlink import Graph


def random_graph(rng: random.Random, n: int, p: float, weighted: bool = False) -> Graph:
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.append((i, j, round(rng.uniform(0.2, 5.0), 3) if weighted else 1.0))
    return Graph.from_edges(n, edges, weighted=weighted)


def random_graphs(count: int, seed: int = 0, max_n: int = 30, weighted: bool = False):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        yield random_graph(rng, n, rng.uniform(0.05, 0.6), weighted)


@pytest.fixture
def path3():
    return lrlink.parse_edge_list("a b\nb c\n")


@pytest.fixture
def karate():
    return lrlink.load_fixture("karate")


@pytest.fixture
def lesmis():
    return lrlink.load_fixture("lesmis", weighted=True)


_criteria = {}
_criteria_meta = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.setdefault(report.nodeid, report.outcome)
        if report.outcome == "failed":
            _criteria[report.nodeid] = "failed"


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _criteria_meta[item.nodeid] = mark.args


def pytest_terminal_summary(terminalreporter):
    rows = sorted(
        (meta[0], meta[1], _criteria.get(nodeid, "not run"))
        for nodeid, meta in _criteria_meta.items()
    )
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, outcome in rows:
        verdict = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"criterion {number}: {verdict}  {text}")
