import numpy as np
import pytest

from vcover.graph import complete_graph, cycle_graph, path_graph, petersen_graph, random_graph, star_graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def named_graphs():
    return {
        "K3": complete_graph(3),
        "K5": complete_graph(5),
        "star4": star_graph(4),
        "star3": star_graph(3),
        "P3": path_graph(3),
        "P4": path_graph(4),
        "P7": path_graph(7),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
        "C8": cycle_graph(8),
        "petersen": petersen_graph(),
    }


def small_random_graphs(count, n_range=(4, 14), probs=(0.1, 0.2, 0.3, 0.5)):
    lo, hi = n_range
    span = hi - lo + 1
    for i in range(count):
        n = lo + i % span
        p = probs[(i // span) % len(probs)]
        yield i, random_graph(n, p, seed=1000 + i)
