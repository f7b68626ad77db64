"""Simple undirected graphs and the constant-time samplers built on them.

Node IDs are dense integers ``0..N-1``. A graph may carry a ``labels``
array mapping each dense ID back to the label it had in an input file.
"""
from functools import cached_property

import numpy as np

from .exceptions import EmptyGraph, IsolatedNode
from ._random import as_generator


def _canonical_edges(edges):
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    arr = arr.reshape(-1, 2)
    if (arr < 0).any():
        raise ValueError("node IDs must be non-negative integers")
    arr = arr[arr[:, 0] != arr[:, 1]]
    arr = np.sort(arr, axis=1)
    return np.unique(arr, axis=0)


class Graph:
    """Immutable simple undirected graph.

    Parameters
    ----------
    n_nodes : int
        Number of nodes; IDs run from 0 to ``n_nodes - 1``.
    edges : (M, 2) array-like of int
        Undirected edges. Duplicates, reversed duplicates and self-loops
        are dropped.
    labels : array-like of int, optional
        Original label of every node, used when writing edge lists.
    """

    def __init__(self, n_nodes, edges=(), labels=None):
        edges = _canonical_edges(edges)
        if len(edges) and edges.max() >= n_nodes:
            raise ValueError(f"edge endpoint {int(edges.max())} out of range for {n_nodes} nodes")
        self._n = int(n_nodes)
        edges.setflags(write=False)
        self._edges = edges
        deg = np.bincount(edges.ravel(), minlength=self._n).astype(np.int64)
        deg.setflags(write=False)
        self._degrees = deg
        if labels is not None:
            labels = np.asarray(labels, dtype=np.int64).copy()
            if labels.shape != (self._n,):
                raise ValueError("labels must have one entry per node")
            labels.setflags(write=False)
        self._labels = labels

    @property
    def n_nodes(self):
        return self._n

    @property
    def n_edges(self):
        return len(self._edges)

    @property
    def edges(self):
        """(M, 2) read-only array of edges ``(i, j)`` with ``i < j``, sorted."""
        return self._edges

    @property
    def degrees(self):
        return self._degrees

    @property
    def labels(self):
        return self._labels

    @cached_property
    def _neighbor_lists(self):
        src = np.concatenate([self._edges[:, 0], self._edges[:, 1]])
        dst = np.concatenate([self._edges[:, 1], self._edges[:, 0]])
        order = np.argsort(src, kind="stable")
        dst = dst[order]
        bounds = np.cumsum(self._degrees)[:-1] if self._n else []
        return [tuple(chunk.tolist()) for chunk in np.split(dst, bounds)] if self._n else []

    @cached_property
    def adjacency(self):
        """Per-node frozenset of neighbor IDs."""
        return [frozenset(nb) for nb in self._neighbor_lists]

    def neighbors(self, i):
        """Neighbors of ``i`` as an indexable tuple."""
        return self._neighbor_lists[i]

    def degree(self, i):
        return int(self._degrees[i])

    def has_edge(self, i, j):
        return j in self.adjacency[i]

    def edge_list(self):
        return [tuple(e) for e in self._edges.tolist()]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._edges, other._edges)

    __hash__ = None

    def __repr__(self):
        return f"Graph(n_nodes={self._n}, n_edges={self.n_edges})"


def build_graph(edges, n_nodes=None):
    """Build a simple undirected graph from a list of ID pairs.

    ``n_nodes`` defaults to the largest ID plus one; IDs below it that never
    appear in an edge become degree-0 nodes.
    """
    arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2) if len(edges) else np.empty((0, 2), np.int64)
    if n_nodes is None:
        n_nodes = int(arr.max()) + 1 if arr.size else 0
    return Graph(n_nodes, arr)


class PiSampler:
    """Draws nodes with probability proportional to degree.

    Node ``i`` occupies exactly ``degree(i)`` slots of a flat vector of
    length ``2M``, so a uniform slot gives ``P(i) = D_i / 2M``.
    """

    def __init__(self, degrees):
        degrees = np.asarray(degrees, dtype=np.int64)
        self.id_vector = np.repeat(np.arange(len(degrees), dtype=np.int64), degrees)
        self.id_vector.setflags(write=False)

    @classmethod
    def from_graph(cls, g):
        return cls(g.degrees)

    def __len__(self):
        return len(self.id_vector)

    @cached_property
    def id_list(self):
        return self.id_vector.tolist()

    def probabilities(self, n_nodes=None):
        n = n_nodes if n_nodes is not None else (int(self.id_vector.max()) + 1 if len(self) else 0)
        counts = np.bincount(self.id_vector, minlength=n)
        return counts / max(len(self), 1)

    def sample(self, rng=None, size=None):
        if not len(self):
            raise EmptyGraph("cannot sample from a graph without edges")
        rng = as_generator(rng)
        if size is None:
            return int(self.id_vector[rng.integers(len(self))])
        return self.id_vector[rng.integers(len(self), size=size)]


def pi_sample(sampler, rng=None):
    """One node drawn with probability ``D_i / 2M``."""
    return sampler.sample(rng)


def uniform_neighbor(g, j, rng=None):
    """A neighbor of ``j`` chosen uniformly at random."""
    nbrs = g.neighbors(j)
    if not nbrs:
        raise IsolatedNode(f"node {j} has no neighbors")
    rng = as_generator(rng)
    return nbrs[int(rng.integers(len(nbrs)))]


def uniform_edge(g, sampler, rng=None):
    """An edge drawn uniformly, returned as ``(start, end)``.

    The start node comes from the degree-proportional sampler and the end
    is one of its neighbors, so each undirected edge has total
    probability ``1/M`` over its two orientations.
    """
    if g.n_edges == 0:
        raise EmptyGraph("cannot sample an edge from an empty graph")
    rng = as_generator(rng)
    j = sampler.sample(rng)
    return j, uniform_neighbor(g, j, rng)
