"""Chung-Lu and Transitive Chung-Lu graph generators.

Three generators share the degree-proportional sampler from ``graph``:

* ``generate_cl_slow`` flips an independent coin for every node pair.
  Quadratic, used as the reference distribution.
* ``generate_cl_fast`` draws both endpoints from the sampler and rejects
  duplicates. With ``corrected=True`` rejected endpoints wait in a FIFO
  queue and are re-paired before any fresh start node is drawn, which
  keeps high-degree nodes from losing degree to collisions.
* ``generate_tcl`` starts from a fast CL graph and replaces the oldest
  edge ``iterations`` times. Each new edge either closes a two-hop path
  (probability ``rho``) or picks its partner from the sampler.
"""
import warnings
from collections import deque
from dataclasses import dataclass

import numpy as np

from ._random import as_generator, derive_rng, uniform_stream
from .exceptions import GraphTooDense, InvariantViolation, IsolatedNode
from .graph import Graph, PiSampler


class ClampWarning(UserWarning):
    """Some pair had ``D_i * D_j / 2M > 1`` and was clamped to probability 1."""


class CollisionQueue:
    """FIFO of node IDs still owed an edge after a rejected placement."""

    def __init__(self):
        self.pending = deque()

    def push(self, node):
        self.pending.append(node)

    def pop(self):
        return self.pending.popleft()

    def __len__(self):
        return len(self.pending)

    def __bool__(self):
        return bool(self.pending)


class AgedEdgeList:
    """Mutable simple graph that remembers edge insertion order.

    Neighbors are kept in per-node lists with a position index so that a
    uniform neighbor draw, an insertion and a deletion are all O(1).
    """

    def __init__(self, n_nodes):
        self.n_nodes = n_nodes
        self.edges = set()
        self.order = deque()
        self._nbrs = [[] for _ in range(n_nodes)]
        self._pos = [{} for _ in range(n_nodes)]

    def __len__(self):
        return len(self.edges)

    def __contains__(self, pair):
        i, j = pair
        return ((i, j) if i < j else (j, i)) in self.edges

    def neighbors(self, i):
        return self._nbrs[i]

    def degree(self, i):
        return len(self._nbrs[i])

    def add(self, i, j):
        key = (i, j) if i < j else (j, i)
        self.edges.add(key)
        self.order.append(key)
        nbrs, pos = self._nbrs, self._pos
        pos[i][j] = len(nbrs[i])
        nbrs[i].append(j)
        pos[j][i] = len(nbrs[j])
        nbrs[j].append(i)

    def _unlink(self, a, b):
        lst, pos = self._nbrs[a], self._pos[a]
        k = pos.pop(b)
        last = lst.pop()
        if last != b:
            lst[k] = last
            pos[last] = k

    def evict_oldest(self):
        key = self.order.popleft()
        self.edges.remove(key)
        self._unlink(key[0], key[1])
        self._unlink(key[1], key[0])
        return key

    def to_graph(self, labels=None):
        edges = np.array(sorted(self.edges), dtype=np.int64).reshape(-1, 2)
        return Graph(self.n_nodes, edges, labels=labels)


@dataclass
class GenParams:
    """Generation settings.

    ``iterations`` and ``max_attempts`` default to ``M`` and ``100 * M``
    when left as ``None``; ``max_attempts`` applies to each phase.
    """

    rho: float = 0.0
    iterations: int = None
    seed: int = None
    max_attempts: int = None
    check_invariants: bool = False

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError("iterations must be non-negative")


@dataclass
class GenMetrics:
    attempts: int = 0
    collisions: int = 0
    fallbacks: int = 0
    insertions: int = 0

    @property
    def retry_ratio(self):
        return self.attempts / self.insertions if self.insertions else float("nan")

    def as_dict(self):
        return {
            "attempts": self.attempts,
            "collisions": self.collisions,
            "fallbacks": self.fallbacks,
            "insertions": self.insertions,
        }


def _resolve_rng(rng, seed, label):
    if rng is not None:
        return as_generator(rng)
    return derive_rng(seed, label) if seed is not None else as_generator(None)


def _max_attempts(params, m):
    return params.max_attempts if params.max_attempts is not None else 100 * max(m, 1)


def generate_cl_slow(g, rng=None):
    """Slow Chung-Lu: each pair ``{i, j}`` independently with ``min(1, D_i D_j / 2M)``.

    Quadratic in the number of non-isolated nodes; meant for graphs up to
    a few thousand nodes.
    """
    rng = as_generator(rng)
    deg = np.asarray(g.degrees, dtype=np.float64)
    two_m = 2.0 * g.n_edges
    active = np.flatnonzero(deg > 0)
    if two_m == 0 or len(active) < 2:
        return Graph(g.n_nodes)
    w = deg[active] / np.sqrt(two_m)
    chunks = []
    clamped = False
    n = len(active)
    # Rows are processed in blocks of ~1M pairs to bound memory.
    step = max(1, 1_000_000 // n)
    for start in range(0, n - 1, step):
        rows = np.arange(start, min(start + step, n - 1))
        p = np.outer(w[rows], w)
        mask = np.arange(n)[None, :] > rows[:, None]
        if not clamped and (p[mask] > 1.0).any():
            clamped = True
        hit = (rng.random(p.shape) < p) & mask
        r, c = np.nonzero(hit)
        chunks.append(np.stack([active[rows[r]], active[c]], axis=1))
    if clamped:
        warnings.warn("edge probabilities above 1 were clamped", ClampWarning, stacklevel=2)
    return Graph(g.n_nodes, np.concatenate(chunks) if chunks else ())


def _place_cl(work, ids, m, draw, corrected, max_attempts, metrics, trace=None):
    """Fill ``work`` with fast-CL edges until it holds ``m`` of them."""
    queue = CollisionQueue().pending
    edges = work.edges
    n_ids = len(ids)
    attempts = 0
    while len(edges) < m:
        if attempts >= max_attempts:
            raise GraphTooDense(f"gave up after {attempts} attempts with {len(edges)} of {m} edges placed")
        attempts += 1
        if queue:
            if trace is not None:
                trace.append(("queue", len(queue)))
            j = queue.popleft()
        else:
            if trace is not None:
                trace.append(("pi", len(queue)))
            j = ids[int(draw() * n_ids)]
        i = ids[int(draw() * n_ids)]
        if i == j or ((i, j) if i < j else (j, i)) in edges:
            metrics.collisions += 1
            if corrected:
                queue.append(i)
                queue.append(j)
            continue
        work.add(i, j)
        metrics.insertions += 1
    metrics.attempts += attempts
    return work


def _fast_cl_work(n_nodes, sampler, m, rng, corrected, max_attempts, metrics, trace=None):
    work = AgedEdgeList(n_nodes)
    if m == 0:
        return work
    draw = uniform_stream(rng).__next__
    return _place_cl(work, sampler.id_list, m, draw, corrected, max_attempts, metrics, trace)


def generate_cl_fast(g, params=None, rng=None, corrected=True, trace=None):
    """Fast Chung-Lu with exactly ``M`` edges.

    Parameters
    ----------
    g : Graph
        Seed graph; only its degree sequence is used.
    params : GenParams, optional
        Only ``max_attempts`` and ``seed`` matter here.
    rng : Generator or int, optional
        Overrides ``params.seed``.
    corrected : bool
        Queue both endpoints of a rejected placement and re-pair them
        first. ``False`` drops the sample and draws fresh, which biases
        high-degree nodes downward.
    trace : list, optional
        Receives one ``(source, queue_length)`` tuple per attempt, where
        source is ``"queue"`` or ``"pi"``.

    Returns
    -------
    (Graph, GenMetrics)
    """
    params = params or GenParams()
    rng = _resolve_rng(rng, params.seed, "warmup")
    metrics = GenMetrics()
    m = g.n_edges
    work = _fast_cl_work(g.n_nodes, PiSampler.from_graph(g), m, rng, corrected,
                         _max_attempts(params, m), metrics, trace)
    return work.to_graph(labels=g.labels), metrics


def two_hop_walk(work, j, rng=None):
    """End node of a two-step uniform walk ``j -> k -> i`` on the current graph.

    ``work`` is anything with a ``neighbors(node)`` sequence, such as a
    ``Graph`` or an ``AgedEdgeList``. The walk may return to ``j``.
    """
    nbrs = work.neighbors(j)
    if not nbrs:
        raise IsolatedNode(f"node {j} has no neighbors")
    rng = as_generator(rng)
    k = nbrs[int(rng.integers(len(nbrs)))]
    nk = work.neighbors(k)
    return nk[int(rng.integers(len(nk)))]


def _tcl_replace(work, ids, rho, iterations, draw, max_attempts, metrics, check=False, trace=None):
    """Replace the oldest edge of ``work`` ``iterations`` times."""
    queue = CollisionQueue().pending
    edges = work.edges
    nbrs = work._nbrs
    add, evict = work.add, work.evict_oldest
    n_ids = len(ids)
    m = len(edges)
    done = attempts = 0
    while done < iterations:
        if attempts >= max_attempts:
            raise GraphTooDense(f"gave up after {attempts} attempts with {done} of {iterations} replacements")
        attempts += 1
        if queue:
            if trace is not None:
                trace.append(("queue", len(queue)))
            j = queue.popleft()
        else:
            if trace is not None:
                trace.append(("pi", len(queue)))
            j = ids[int(draw() * n_ids)]
        if draw() < rho:
            nj = nbrs[j]
            if nj:
                k = nj[int(draw() * len(nj))]
                nk = nbrs[k]
                i = nk[int(draw() * len(nk))]
            else:
                metrics.fallbacks += 1
                i = ids[int(draw() * n_ids)]
        else:
            i = ids[int(draw() * n_ids)]
        if i == j or ((i, j) if i < j else (j, i)) in edges:
            metrics.collisions += 1
            queue.append(i)
            queue.append(j)
            continue
        add(i, j)
        evict()
        done += 1
        metrics.insertions += 1
        if check and len(edges) != m:
            raise InvariantViolation(f"edge count {len(edges)} != {m} after replacement {done}")
    metrics.attempts += attempts
    return work


def generate_tcl(g, params=None, rng=None, trace=None):
    """Transitive Chung-Lu graph with the degree sequence of ``g``.

    The graph is seeded with a corrected fast CL sample, then
    ``params.iterations`` (default ``M``) successful replacements are
    made. Each replacement picks a start node from the collision queue
    or the degree sampler; with probability ``params.rho`` its partner is
    the end of a two-hop walk, otherwise another sampler draw. A new edge
    evicts the oldest one; a duplicate or self-loop queues both endpoints
    and evicts nothing.

    Returns
    -------
    (Graph, GenMetrics)
    """
    params = params or GenParams()
    m = g.n_edges
    if rng is not None:
        warm_rng = rep_rng = as_generator(rng)
    else:
        warm_rng = _resolve_rng(None, params.seed, "warmup")
        rep_rng = _resolve_rng(None, params.seed, "replacement")
    work, metrics = _tcl_work(g.n_nodes, PiSampler.from_graph(g), m, params, warm_rng, rep_rng, trace)
    return work.to_graph(labels=g.labels), metrics


def _tcl_work(n_nodes, sampler, m, params, warm_rng, rep_rng, trace=None):
    metrics = GenMetrics()
    budget = _max_attempts(params, m)
    work = _fast_cl_work(n_nodes, sampler, m, warm_rng, True, budget, metrics)
    active = len(np.unique(sampler.id_vector))
    if m == 0 or m == active * (active - 1) // 2:
        # a complete graph on the active nodes admits no replacement
        return work, metrics
    iterations = m if params.iterations is None else params.iterations
    draw = uniform_stream(rep_rng).__next__
    _tcl_replace(work, sampler.id_list, params.rho, iterations, draw,
                 max(budget, 100 * iterations) if params.max_attempts is None else budget,
                 metrics, params.check_invariants, trace)
    return work, metrics
