import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsdkit.errors import (
    DegenerateGraph,
    Disconnected,
    DuplicateEdge,
    ParseError,
    SelfLoopInInput,
    SizeLimit,
)
from dsdkit.graph import (
    Graph,
    bfs_distances,
    cycle_graph,
    diameter,
    from_edge_list,
    graph_distance,
    hypercube_graph,
    is_bipartite,
    is_connected,
    path_graph,
)
from tests.conftest import random_connected_graph


def test_edge_list_path():
    g = from_edge_list("0 1\n1 2")
    assert g.n == 3
    assert g.degrees.tolist() == [1, 2, 1]


def test_edge_list_comments_blank_and_crlf():
    g = from_edge_list("# header\r\n\r\n0 1\r\n  # indented comment\n1 2\r\n")
    assert g.num_edges == 2


@pytest.mark.parametrize("text, exc", [
    ("0 1\n0 1", DuplicateEdge),
    ("0 1\n1 0", DuplicateEdge),
    ("0 0", SelfLoopInInput),
    ("0 a", ParseError),
    ("0 1 2", ParseError),
    ("-1 2", ParseError),
    ("# nothing\n", ParseError),
])
def test_edge_list_errors(text, exc):
    with pytest.raises(exc):
        from_edge_list(text)


def test_path_graph():
    assert path_graph(2).volume == 2
    g = path_graph(4)
    assert g.degrees.tolist() == [1, 2, 2, 1]
    assert g.volume == 6
    with pytest.raises(DegenerateGraph):
        path_graph(1)


def test_cycle_graph():
    g = cycle_graph(4)
    assert g.num_edges == 4 and set(g.degrees.tolist()) == {2}
    assert cycle_graph(3).num_edges == 3
    with pytest.raises(DegenerateGraph):
        cycle_graph(2)


def test_hypercube_graph():
    assert hypercube_graph(1).num_edges == 1
    q3 = hypercube_graph(3)
    assert q3.n == 8 and q3.num_edges == 12 and set(q3.degrees.tolist()) == {3}
    # Q2 relabelled along 00, 01, 11, 10 is C4
    perm = [0, 1, 3, 2]
    A = hypercube_graph(2).adjacency[np.ix_(perm, perm)]
    assert np.array_equal(A, cycle_graph(4).adjacency)
    with pytest.raises(SizeLimit):
        hypercube_graph(15)
    assert hypercube_graph(3, max_vertices=8).n == 8
    with pytest.raises(SizeLimit):
        hypercube_graph(4, max_vertices=8)


def test_connectivity():
    assert is_connected(path_graph(5))
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(Graph.from_edges(1, []))


def test_bipartite():
    assert is_bipartite(cycle_graph(4))
    assert not is_bipartite(cycle_graph(5))
    assert is_bipartite(hypercube_graph(3))
    loop = Graph.from_edges(2, [(0, 1), (1, 1)])
    assert not is_bipartite(loop)


def test_graph_distance():
    assert graph_distance(cycle_graph(6), 0, 3) == 3
    assert graph_distance(path_graph(3), 1, 1) == 0
    assert graph_distance(hypercube_graph(3), 0b000, 0b111) == 3
    with pytest.raises(Disconnected):
        graph_distance(Graph.from_edges(4, [(0, 1), (2, 3)]), 0, 3)
    assert diameter(path_graph(4)) == 3


def test_self_loop_degree_convention():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (2, 2)])
    assert g.degrees.tolist() == [1, 2, 2]
    assert g.adjacency[2, 2] == 1.0
    assert np.array_equal(g.degrees, g.adjacency.sum(axis=1))
    assert g.volume == 2 * 2 + 1


@pytest.mark.parametrize("make, n", [(path_graph, 2), (path_graph, 9), (cycle_graph, 3),
                                      (cycle_graph, 8), (hypercube_graph, 1), (hypercube_graph, 5)])
def test_generator_invariants(make, n):
    g = make(n)
    A = g.adjacency
    assert np.array_equal(A, A.T)
    assert np.array_equal(g.degrees, A.sum(axis=1))
    assert g.volume == 2 * (g.num_edges - g.num_loops) + g.num_loops
    assert is_connected(g)


@pytest.mark.parametrize("n", range(2, 13))
def test_family_bipartiteness(n):
    assert is_bipartite(path_graph(n))
    if n >= 3:
        assert is_bipartite(cycle_graph(n)) == (n % 2 == 0)
    if n <= 8:
        assert is_bipartite(hypercube_graph(n))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 16), p=st.floats(0, 0.5))
def test_distance_is_a_metric(seed, n, p):
    g = random_connected_graph(np.random.default_rng(seed), n, p)
    D = np.array([bfs_distances(g, u) for u in range(n)])
    assert np.array_equal(D, D.T)
    assert (np.diag(D) == 0).all() and (D[~np.eye(n, dtype=bool)] > 0).all()
    for u, v, w in itertools.product(range(n), repeat=3):
        assert D[u, w] <= D[u, v] + D[v, w]


def test_edge_list_round_trip():
    g = hypercube_graph(3)
    h = from_edge_list(g.to_edge_list())
    assert np.array_equal(g.adjacency, h.adjacency)


def test_graph_is_immutable():
    g = path_graph(3)
    with pytest.raises(ValueError):
        g.indices[0] = 2
    with pytest.raises(ValueError):
        g.adjacency[0, 0] = 1
