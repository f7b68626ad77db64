"""Expectation-maximization fit of the transitivity parameter ``rho``.

Every edge ``(j, i)`` is treated as placed from start node ``j`` by one of
two routes: a two-hop walk ``j -> k -> i`` (weight ``rho``) or a direct
draw of ``i`` from the degree distribution (weight ``1 - rho``). Each
iteration draws a fresh uniform sample of edges, computes the posterior
probability that each was a walk closure, and sets ``rho`` to their mean.
"""
import time
from dataclasses import dataclass, field

import numpy as np

from ._random import as_generator
from .exceptions import EmptyGraph, EmptySample, NotAnEdge
from .graph import PiSampler


@dataclass
class EmConfig:
    """EM settings.

    Convergence needs ``|rho_{t+1} - rho_t|`` below the threshold for
    ``patience`` consecutive iterations. The threshold is the larger of
    ``tolerance`` and ``noise_scale`` times the Monte Carlo standard error
    of the current M-step mean; fresh samples every iteration make
    steps smaller than that indistinguishable from sampling noise. Set
    ``noise_scale=0`` for a pure ``tolerance`` rule.
    """

    samples_per_iteration: int = 10_000
    max_iterations: int = 100
    tolerance: float = 1e-3
    patience: int = 3
    noise_scale: float = 3.0
    rho_init: float = 0.5
    seed: int = None

    def __post_init__(self):
        if self.samples_per_iteration < 1:
            raise ValueError("samples_per_iteration must be at least 1")
        if not 0.0 < self.rho_init < 1.0:
            raise ValueError("rho_init must lie strictly between 0 and 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class EdgeResponsibility:
    edge: tuple
    value: float


@dataclass
class EmTrace:
    rho_final: float
    per_iteration: list = field(default_factory=list)
    converged: bool = False

    @property
    def n_iterations(self):
        return len(self.per_iteration)

    def as_dict(self, timings=False):
        rows = []
        for it, rho, elapsed in self.per_iteration:
            row = {"iteration": it, "rho": rho}
            if timings:
                row["elapsed_s"] = elapsed
            rows.append(row)
        return {"rho_final": self.rho_final, "converged": self.converged, "per_iteration": rows}


def closure_weight(g, j, i):
    """Probability that a two-hop walk from ``j`` ends on ``i``.

    Sum over common neighbors ``k`` of ``1 / (D_j * D_k)``. Iterates the
    smaller neighbor set and probes the other.
    """
    adj = g.adjacency
    a, b = adj[j], adj[i]
    if len(a) > len(b):
        a, b = b, a
    deg = g.degrees
    total = 0.0
    for k in a:
        if k in b:
            total += 1.0 / deg[k]
    return total / deg[j] if total else 0.0


def _responsibility(walk, surf, rho):
    num = rho * walk
    den = num + (1.0 - rho) * surf
    return num / den if den > 0 else 0.0


def e_step(g, edge, rho):
    """Posterior probability that ``edge = (j, i)`` closed a two-hop walk from ``j``."""
    j, i = edge
    if not g.has_edge(j, i):
        raise NotAnEdge(f"{edge} is not an edge of the graph")
    surf = g.degrees[i] / (2.0 * g.n_edges)
    return EdgeResponsibility((j, i), _responsibility(closure_weight(g, j, i), surf, rho))


def m_step(responsibilities):
    """MLE of ``rho``: the mean posterior over the sampled edges."""
    values = [r.value if isinstance(r, EdgeResponsibility) else float(r) for r in responsibilities]
    if not values:
        raise EmptySample("m_step needs at least one responsibility")
    return float(np.mean(values))


def _sample_edges(g, ids, size, rng):
    """``size`` edges drawn uniformly with replacement, as (start, end) arrays."""
    starts = ids[rng.integers(len(ids), size=size)]
    offsets = rng.random(size)
    deg = g.degrees[starts]
    picks = (offsets * deg).astype(np.int64)
    nbrs = g._neighbor_lists
    ends = np.fromiter((nbrs[s][p] for s, p in zip(starts.tolist(), picks.tolist())),
                       dtype=np.int64, count=size)
    return starts, ends


def fit_rho(g, cfg=None, rng=None):
    """Fit ``rho`` to ``g`` by stochastic EM.

    Parameters
    ----------
    g : Graph
    cfg : EmConfig, optional
    rng : Generator or int, optional
        Overrides ``cfg.seed``.

    Returns
    -------
    EmTrace
    """
    cfg = cfg or EmConfig()
    if g.n_edges == 0:
        raise EmptyGraph("cannot fit rho on a graph without edges")
    rng = as_generator(rng if rng is not None else cfg.seed)
    t0 = time.perf_counter()
    ids = PiSampler.from_graph(g).id_vector
    two_m = 2.0 * g.n_edges
    deg = g.degrees
    cache = {}
    rho = cfg.rho_init
    trace = EmTrace(rho_final=rho)
    streak = 0
    for it in range(1, cfg.max_iterations + 1):
        starts, ends = _sample_edges(g, ids, cfg.samples_per_iteration, rng)
        walk = np.empty(len(starts))
        for n, (j, i) in enumerate(zip(starts.tolist(), ends.tolist())):
            w = cache.get((j, i))
            if w is None:
                w = cache[(j, i)] = closure_weight(g, j, i)
            walk[n] = w
        surf = deg[ends] / two_m
        num = rho * walk
        den = num + (1.0 - rho) * surf
        resp = np.divide(num, den, out=np.zeros_like(num), where=den > 0)
        new_rho = float(resp.mean())
        se = float(resp.std()) / np.sqrt(len(resp))
        threshold = max(cfg.tolerance, cfg.noise_scale * se)
        streak = streak + 1 if abs(new_rho - rho) < threshold else 0
        rho = new_rho
        trace.per_iteration.append((it, rho, time.perf_counter() - t0))
        if streak >= cfg.patience:
            trace.converged = True
            break
    trace.rho_final = rho
    return trace
