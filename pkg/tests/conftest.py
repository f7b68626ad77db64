import itertools
import sys

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from tclgen import Graph

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def path3():
    return Graph(3, [(0, 1), (1, 2)])


def star(leaves):
    return Graph(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


def cycle(n):
    return Graph(n, [(k, (k + 1) % n) for k in range(n)])


def brute_triangles(g):
    """Per-node triangle counts by checking every node triple."""
    adj = g.adjacency
    tri = np.zeros(g.n_nodes, dtype=np.int64)
    for a, b, c in itertools.combinations(range(g.n_nodes), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            tri[[a, b, c]] += 1
    return tri


def bfs_distances(g, s):
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


@st.composite
def graphs(draw, max_nodes=20, min_edges=0):
    n = draw(st.integers(2, max_nodes))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pairs, min_size=min_edges, max_size=3 * n))
    return Graph(n, edges)


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture
def tmp_edges(tmp_path):
    def _write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return p
    return _write


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
