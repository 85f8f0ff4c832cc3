"""Undirected graphs, named families, edge-list parsing and structural checks.

Vertices are the integers ``0..n-1``. The closed-form formulas elsewhere use
1-based labels; that shift happens at their boundary, never here.

A self-loop is allowed only for generator output (the Chung-Lu model) and
contributes 1 to its adjacency diagonal and 1 to the vertex degree, so the
degree is always the adjacency row sum.
"""
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateGraph,
    Disconnected,
    DuplicateEdge,
    InvalidVertex,
    ParseError,
    SelfLoopInInput,
    SizeLimit,
)

HYPERCUBE_MAX_VERTICES = 2**14


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph in CSR form.

    ``indices[indptr[v]:indptr[v+1]]`` lists the neighbours of ``v`` in
    ascending order; a loop at ``v`` lists ``v`` once.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @classmethod
    def from_edges(cls, n, edges):
        """Build a graph on ``n`` vertices from an iterable of ``(u, v)`` pairs.

        Pairs are taken as undirected; repeated pairs are merged and
        ``(v, v)`` becomes a self-loop.
        """
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InvalidVertex(f"edge endpoint outside 0..{n - 1}")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = np.unique(lo * max(n, 1) + hi)
        lo, hi = key // max(n, 1), key % max(n, 1)
        loop = lo == hi
        src = np.concatenate([lo, hi[~loop]])
        dst = np.concatenate([hi, lo[~loop]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(int(n), indptr, dst.astype(np.int64))

    @classmethod
    def from_adjacency(cls, A):
        A = np.asarray(A)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("adjacency must be square")
        if not np.array_equal(A, A.T):
            raise ValueError("adjacency must be symmetric")
        i, j = np.nonzero(np.triu(A))
        return cls.from_edges(A.shape[0], np.column_stack([i, j]))

    @cached_property
    def degrees(self):
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    @property
    def volume(self):
        return int(self.degrees.sum())

    @cached_property
    def adjacency(self):
        A = np.zeros((self.n, self.n), dtype=np.float64)
        rows = np.repeat(np.arange(self.n), self.degrees)
        A[rows, self.indices] = 1.0
        A.setflags(write=False)
        return A

    @property
    def num_loops(self):
        rows = np.repeat(np.arange(self.n), self.degrees)
        return int(np.count_nonzero(rows == self.indices))

    @property
    def num_edges(self):
        """Edge count with each loop counted once."""
        return (self.volume - self.num_loops) // 2 + self.num_loops

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self):
        """Sorted ``(u, v)`` pairs with ``u <= v``."""
        rows = np.repeat(np.arange(self.n), self.degrees)
        keep = rows <= self.indices
        return np.column_stack([rows[keep], self.indices[keep]])

    @property
    def max_degree(self):
        return int(self.degrees.max())

    @property
    def min_degree(self):
        return int(self.degrees.min())

    def check_vertex(self, v):
        if not (0 <= int(v) < self.n):
            raise InvalidVertex(f"vertex {v} not in 0..{self.n - 1}")
        return int(v)

    def to_edge_list(self, header=True):
        lines = [f"# n={self.n} m={self.num_edges}"] if header else []
        lines += [f"{u} {v}" for u, v in self.edges()]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def from_edge_list(text):
    """Parse a line-oriented edge list into a simple graph.

    Each data line is ``u v`` with non-negative integers; ``#`` lines and
    blank lines are skipped. The vertex count is ``max_id + 1``.
    """
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        if u == v:
            raise SelfLoopInInput(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {key[0]}-{key[1]}")
        seen.add(key)
        edges.append(key)
    if not edges:
        raise ParseError("edge list contains no edges")
    n = max(max(e) for e in edges) + 1
    return Graph.from_edges(n, edges)


def path_graph(n):
    if n < 2:
        raise DegenerateGraph(f"path needs n >= 2, got {n}")
    i = np.arange(n - 1)
    return Graph.from_edges(n, np.column_stack([i, i + 1]))


def cycle_graph(n):
    if n < 3:
        raise DegenerateGraph(f"cycle needs n >= 3, got {n}")
    i = np.arange(n)
    return Graph.from_edges(n, np.column_stack([i, (i + 1) % n]))


def hypercube_graph(n, max_vertices=HYPERCUBE_MAX_VERTICES):
    """Q_n on the bit patterns ``0..2**n - 1``; adjacent iff one bit differs."""
    if n < 1:
        raise DegenerateGraph(f"hypercube needs n >= 1, got {n}")
    if 2**n > max_vertices:
        raise SizeLimit(f"Q_{n} has 2**{n} vertices, cap is {max_vertices}")
    x = np.arange(2**n)
    edges = [np.column_stack([x, x ^ (1 << b)]) for b in range(n)]
    return Graph.from_edges(2**n, np.concatenate(edges))


def complete_graph(n):
    if n < 2:
        raise DegenerateGraph(f"complete graph needs n >= 2, got {n}")
    i, j = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.column_stack([i, j]))


def bfs_distances(g, source):
    """Hop counts from ``source``; -1 marks unreachable vertices."""
    source = g.check_vertex(source)
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    indptr, indices = g.indptr, g.indices
    while queue:
        x = queue.popleft()
        for y in indices[indptr[x]:indptr[x + 1]]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_connected(g):
    if g.n <= 1:
        return True
    return bool((bfs_distances(g, 0) >= 0).all())


def is_bipartite(g):
    color = np.full(g.n, -1, dtype=np.int64)
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def graph_distance(g, u, v):
    u, v = g.check_vertex(u), g.check_vertex(v)
    d = bfs_distances(g, u)[v]
    if d < 0:
        raise Disconnected(f"no path from {u} to {v}")
    return int(d)


def diameter(g):
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    A = csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr), shape=(g.n, g.n))
    D = shortest_path(A, unweighted=True, directed=False)
    if np.isinf(D).any():
        raise Disconnected("diameter of a disconnected graph is undefined")
    return int(D.max())
