"""Graph statistics used to compare generated graphs with their seed.

Degree and local-clustering distributions are reported as CCDFs, the
fraction of nodes whose value strictly exceeds ``x``. Every series
starts at ``x = 0``. The hop plot gives, for each ``h``, the fraction
of ordered node pairs at finite distance that are within ``h`` hops.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ._random import as_generator
from .exceptions import EmptySeries, NoTriples

EXACT_HOP_LIMIT = 10_000
DEFAULT_HOP_SOURCES = 1_000


@dataclass
class CcdfSeries:
    points: list
    n: int = 0

    def __len__(self):
        return len(self.points)

    def value_at(self, x):
        """Step-function value at ``x``; 1.0 left of the first point."""
        value = 1.0
        for px, py in self.points:
            if px > x:
                break
            value = py
        return value

    def as_dict(self):
        return {"n": self.n, "points": [[float(x), float(y)] for x, y in self.points]}


@dataclass
class HopPlot:
    points: list
    sources_used: int = 0
    exact: bool = True

    def value_at(self, h):
        """Fraction within ``h`` hops; 0 before the first point, 1 past the last."""
        if not self.points:
            return 0.0
        value = 0.0
        for ph, py in self.points:
            if ph > h:
                return value
            value = py
        return 1.0

    def as_dict(self):
        return {
            "sources_used": self.sources_used,
            "exact": self.exact,
            "points": [[int(h), float(y)] for h, y in self.points],
        }


@dataclass
class StatsReport:
    n: int
    m: int
    degree_ccdf: CcdfSeries
    clustering_ccdf: CcdfSeries
    hop_plot: HopPlot
    global_clustering: float = None
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "n": self.n,
            "m": self.m,
            "global_clustering": self.global_clustering,
            "degree_ccdf": self.degree_ccdf.as_dict(),
            "clustering_ccdf": self.clustering_ccdf.as_dict(),
            "hop_plot": self.hop_plot.as_dict(),
        }


def _ccdf(values, count):
    values = np.asarray(values, dtype=np.float64)
    xs = np.union1d([0.0], values)
    srt = np.sort(values)
    above = count - np.searchsorted(srt, xs, side="right")
    return [(x, a / count) for x, a in zip(xs.tolist(), above.tolist())]


def degree_ccdf(g):
    """Fraction of nodes with degree strictly greater than each observed degree."""
    if g.n_nodes == 0:
        return CcdfSeries([], 0)
    pts = _ccdf(g.degrees, g.n_nodes)
    return CcdfSeries([(int(x), y) for x, y in pts], g.n_nodes)


def triangles_per_node(g):
    """Number of edges among the neighbors of each node.

    Each edge ``(u, v)`` contributes its common-neighbor count to both
    endpoints, which counts every triangle at a node twice.
    """
    adj = g.adjacency
    tri = np.zeros(g.n_nodes, dtype=np.int64)
    for u, v in g.edges.tolist():
        a, b = adj[u], adj[v]
        if len(a) > len(b):
            a, b = b, a
        c = sum(1 for k in a if k in b)
        if c:
            tri[u] += c
            tri[v] += c
    return tri // 2


def triangle_count(g):
    return int(triangles_per_node(g).sum() // 3)


def local_clustering(g, include_deg1=False):
    """Local clustering of every eligible node, as ``(nodes, coefficients)``.

    Nodes need degree at least 2, or at least 1 with ``include_deg1``
    (those get coefficient 0).
    """
    deg = g.degrees
    min_deg = 1 if include_deg1 else 2
    nodes = np.flatnonzero(deg >= min_deg)
    tri = triangles_per_node(g)[nodes]
    d = deg[nodes].astype(np.float64)
    possible = d * (d - 1) / 2.0
    coef = np.divide(tri, possible, out=np.zeros_like(d), where=possible > 0)
    return nodes, coef


def clustering_ccdf(g, include_deg1=False):
    """CCDF of local clustering over nodes of degree at least 2."""
    _, coef = local_clustering(g, include_deg1)
    if len(coef) == 0:
        return CcdfSeries([], 0)
    return CcdfSeries(_ccdf(coef, len(coef)), len(coef))


def global_clustering(g):
    """Three times the triangle count over the number of connected triples."""
    d = g.degrees.astype(np.float64)
    triples = float((d * (d - 1) / 2.0).sum())
    if triples == 0:
        raise NoTriples("graph has no connected triples")
    return 3.0 * triangle_count(g) / triples


def _csr(g):
    e = g.edges
    data = np.ones(2 * len(e), dtype=np.int8)
    rows = np.concatenate([e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0]])
    return csr_matrix((data, (rows, cols)), shape=(g.n_nodes, g.n_nodes))


def hop_plot(g, sources=None, rng=None):
    """Cumulative distance distribution over ordered pairs at finite distance.

    Parameters
    ----------
    g : Graph
    sources : "all", int or None
        BFS roots. ``None`` means all nodes up to 10,000 nodes and 1,000
        uniformly sampled roots beyond that.
    rng : Generator or int, optional
        Used only when sampling roots.
    """
    n = g.n_nodes
    if sources is None:
        sources = "all" if n <= EXACT_HOP_LIMIT else DEFAULT_HOP_SOURCES
    if sources == "all" or int(sources) >= n:
        roots = np.arange(n)
        exact = True
    else:
        roots = np.sort(as_generator(rng).choice(n, size=int(sources), replace=False))
        exact = False
    hist = np.zeros(1, dtype=np.int64)
    if g.n_edges:
        A = _csr(g)
        chunk = max(1, 4_000_000 // max(n, 1))
        for s in range(0, len(roots), chunk):
            dist = shortest_path(A, method="D", unweighted=True, indices=roots[s:s + chunk])
            finite = dist[np.isfinite(dist) & (dist > 0)].astype(np.int64)
            h = np.bincount(finite)
            if len(h) > len(hist):
                hist = np.pad(hist, (0, len(h) - len(hist)))
            hist[:len(h)] += h
    total = hist.sum()
    if total == 0:
        warnings.warn("no pairs at finite distance; hop plot is empty", RuntimeWarning, stacklevel=2)
        return HopPlot([], len(roots), exact)
    cum = np.cumsum(hist)[1:] / total
    points = [(h, float(f)) for h, f in enumerate(cum.tolist(), 1)]
    points[-1] = (points[-1][0], 1.0)
    return HopPlot(points, len(roots), exact)


def ks_distance(a, b):
    """Largest vertical gap between two CCDF step functions."""
    if not len(a) or not len(b):
        raise EmptySeries("ks_distance needs two non-empty series")
    xa, ya = np.array(a.points, dtype=np.float64).T
    xb, yb = np.array(b.points, dtype=np.float64).T
    xs = np.union1d(xa, xb)
    return float(np.abs(_step(xa, ya, xs) - _step(xb, yb, xs)).max())


def _step(px, py, xs):
    idx = np.searchsorted(px, xs, side="right") - 1
    return np.where(idx >= 0, py[np.maximum(idx, 0)], 1.0)


def hop_plot_gap(a, b):
    """Largest vertical gap between two hop plots at any hop count."""
    hs = {h for h, _ in a.points} | {h for h, _ in b.points}
    if not hs:
        return 0.0
    return max(abs(a.value_at(h) - b.value_at(h)) for h in hs)


def mean_hop_plot(plots):
    """Pointwise mean of several hop plots."""
    hs = sorted({h for p in plots for h, _ in p.points})
    points = [(h, float(np.mean([p.value_at(h) for p in plots]))) for h in hs]
    return HopPlot(points, sum(p.sources_used for p in plots), all(p.exact for p in plots))


def compute_stats(g, hop_sources=None, rng=None, include_deg1=False):
    try:
        gc = global_clustering(g)
    except NoTriples:
        gc = None
    return StatsReport(
        n=g.n_nodes,
        m=g.n_edges,
        degree_ccdf=degree_ccdf(g),
        clustering_ccdf=clustering_ccdf(g, include_deg1),
        hop_plot=hop_plot(g, hop_sources, rng),
        global_clustering=gc,
    )


def top_degree_edges(g, k=10):
    """Edges of ``g`` touching any of its ``k`` highest-degree nodes."""
    top = np.argsort(-g.degrees, kind="stable")[:k]
    mask = np.isin(g.edges[:, 0], top) | np.isin(g.edges[:, 1], top)
    return [tuple(e) for e in g.edges[mask].tolist()]


def empirical_edge_probabilities(g, generator, runs, watch=None, rng=None, rho=0.0):
    """How often each watched pair is an edge across ``runs`` generated graphs.

    Parameters
    ----------
    g : Graph
        Seed graph.
    generator : {"cl-fast", "cl-slow", "tcl"}
    runs : int
    watch : iterable of (i, j), optional
        Defaults to the edges of the ten highest-degree nodes.
    rng : Generator or int, optional
        Master seed; each run gets its own spawned stream.
    rho : float
        Transitivity for ``"tcl"``.

    Returns
    -------
    dict
        ``{(i, j): (frequency, min(1, D_i D_j / 2M))}`` keyed with ``i < j``.
    """
    from .generators import GenParams, generate_cl_fast, generate_cl_slow, generate_tcl

    if runs < 1:
        raise ValueError("runs must be at least 1")
    watch = top_degree_edges(g) if watch is None else [tuple(sorted(map(int, p))) for p in watch]
    n = g.n_nodes
    for i, j in watch:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"watched pair {(i, j)} references a node outside the graph")
    codes = np.array([i * n + j for i, j in watch], dtype=np.int64)
    hits = np.zeros(len(watch), dtype=np.int64)
    params = GenParams(rho=rho)
    for child in as_generator(rng).spawn(runs):
        if generator == "cl-fast":
            out, _ = generate_cl_fast(g, params, rng=child)
        elif generator == "cl-slow":
            out = generate_cl_slow(g, rng=child)
        elif generator == "tcl":
            out, _ = generate_tcl(g, params, rng=child)
        else:
            raise ValueError(f"unknown generator {generator!r}")
        present = out.edges[:, 0] * n + out.edges[:, 1]
        hits += np.isin(codes, present)
    two_m = 2.0 * g.n_edges
    deg = g.degrees
    return {
        (i, j): (hits[k] / runs, min(1.0, deg[i] * deg[j] / two_m) if two_m else 0.0)
        for k, (i, j) in enumerate(watch)
    }


def two_hop_landing(g, runs, walks_per_graph=1000, rng=None):
    """Pooled end-node distribution of two-hop walks over a CL ensemble.

    Each of ``runs`` fast CL graphs generated from ``g`` hosts
    ``walks_per_graph`` walks whose start nodes are drawn from the
    generated graph's own degree distribution, as generation does.

    Returns
    -------
    (total_variation, landing_frequencies)
        Distance to ``D_i / 2M`` of the seed graph, and the pooled
        frequencies.
    """
    from .generators import generate_cl_fast
    from .graph import PiSampler

    counts = np.zeros(g.n_nodes, dtype=np.int64)
    for child in as_generator(rng).spawn(runs):
        h, _ = generate_cl_fast(g, rng=child)
        starts = PiSampler.from_graph(h).sample(child, size=walks_per_graph)
        nbrs = h._neighbor_lists
        u = child.random((walks_per_graph, 2))
        for s, (a, b) in zip(starts.tolist(), u.tolist()):
            ns = nbrs[s]
            k = ns[int(a * len(ns))]
            nk = nbrs[k]
            counts[nk[int(b * len(nk))]] += 1
    freq = counts / counts.sum()
    pi = g.degrees / (2.0 * g.n_edges)
    return 0.5 * float(np.abs(freq - pi).sum()), freq
