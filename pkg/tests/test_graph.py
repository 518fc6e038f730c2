import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcover.graph import GraphError, build_graph, petersen_graph, random_graph, star_graph


def check_invariants(g):
    degrees = g.degrees
    assert degrees.sum() == 2 * g.edge_count
    for v in range(g.vertex_count):
        nbrs = g.neighbors(v)
        assert v not in nbrs
        assert len(set(nbrs.tolist())) == nbrs.size == degrees[v]
        for u in nbrs.tolist():
            assert v in g.neighbors(u)


def test_triangle():
    g = build_graph([(0, 1), (0, 2), (1, 2)], 3)
    assert g.edge_count == 3
    assert g.degrees.tolist() == [2, 2, 2]


def test_duplicates_and_loops_dropped():
    g = build_graph([(0, 1), (1, 0), (2, 2)], 3)
    assert g.edges.tolist() == [[0, 1]]
    assert g.degree(2) == 0
    assert g.dropped == 2


def test_star():
    g = build_graph([(0, 1), (0, 2), (0, 3)], 4)
    assert g.degrees.tolist() == [3, 1, 1, 1]
    assert g.d_max == 3
    assert g.d_avg == pytest.approx(1.5)


def test_out_of_range_names_pair():
    with pytest.raises(GraphError, match=r"\(0, 5\)"):
        build_graph([(0, 1), (0, 5)], 3)


def test_isolated_vertices_kept():
    g = build_graph([(0, 1)], 5)
    assert g.vertex_count == 5
    assert g.degrees.tolist() == [1, 1, 0, 0, 0]


def test_random_graph_extremes():
    assert random_graph(5, 0.0, 1).edge_count == 0
    assert random_graph(5, 1.0, 1).edge_count == 10


def test_random_graph_reproducible():
    a = random_graph(12, 0.3, 7)
    b = random_graph(12, 0.3, 7)
    assert a == b
    assert a.edge_count == b.edge_count
    assert random_graph(12, 0.3, 8) != a


def test_sparse_generator_path():
    # above the dense-enumeration threshold: binomial count + uniform pairs
    g = random_graph(5000, 8 / 5000, 3)
    check_invariants(g) if g.vertex_count < 100 else None
    assert g.degrees.sum() == 2 * g.edge_count
    assert abs(g.edge_count - 0.5 * 5000 * 4999 * 8 / 5000) < 5 * np.sqrt(20000)
    assert g == random_graph(5000, 8 / 5000, 3)


def test_bad_probability():
    with pytest.raises(GraphError):
        random_graph(5, 1.5, 0)


def test_petersen_is_cubic():
    g = petersen_graph()
    assert g.edge_count == 15
    assert set(g.degrees.tolist()) == {3}
    check_invariants(g)


def test_has_edge():
    g = star_graph(3)
    assert g.has_edge(0, 2) and g.has_edge(2, 0)
    assert not g.has_edge(1, 2)


edge_lists = st.integers(1, 20).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=60))
)


@given(edge_lists)
@settings(max_examples=150, deadline=None)
def test_invariants_and_rebuild_fixpoint(data):
    n, pairs = data
    g = build_graph(pairs, n)
    check_invariants(g)
    expected = {(min(u, v), max(u, v)) for u, v in pairs if u != v}
    assert {tuple(e) for e in g.edges.tolist()} == expected
    assert build_graph(g.edges, n) == g
