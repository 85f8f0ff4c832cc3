import numpy as np
import pytest

from dsdkit.graph import Graph, complete_graph, cycle_graph, hypercube_graph, is_connected, path_graph


def random_connected_graph(rng, n, extra_p):
    """Random spanning tree on n vertices plus independent extra edges."""
    parents = [int(rng.integers(0, i)) for i in range(1, n)]
    edges = [(i, p) for i, p in zip(range(1, n), parents)]
    if extra_p > 0:
        i, j = np.triu_indices(n, 1)
        keep = rng.random(len(i)) < extra_p
        edges += list(zip(i[keep].tolist(), j[keep].tolist()))
    g = Graph.from_edges(n, edges)
    assert is_connected(g)
    return g


def seeded_graphs(count, seed=2024, n_max=64):
    """Mixed family: trees and even cycles (bipartite) and denser graphs."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(count):
        n = int(rng.integers(3, n_max + 1))
        kind = k % 3
        if kind == 0:
            out.append(random_connected_graph(rng, n, 0.0))
        elif kind == 1:
            out.append(random_connected_graph(rng, n, float(rng.uniform(0.02, 0.3))))
        else:
            m = n + (n % 2)
            out.append(cycle_graph(min(m, n_max)))
    return out


NAMED = {
    "K2": lambda: path_graph(2),
    "K3": lambda: complete_graph(3),
    "K5": lambda: complete_graph(5),
    "P4": lambda: path_graph(4),
    "P7": lambda: path_graph(7),
    "C4": lambda: cycle_graph(4),
    "C5": lambda: cycle_graph(5),
    "C6": lambda: cycle_graph(6),
    "Q3": lambda: hypercube_graph(3),
    "Q4": lambda: hypercube_graph(4),
}


@pytest.fixture(params=sorted(NAMED))
def named_graph(request):
    return request.param, NAMED[request.param]()


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in sorted(test_acceptance.RESULTS.items(),
                                     key=lambda kv: int(kv[0].split()[0])):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
