"""Wall-clock scaling of graph generation."""
import gc
import time

import numpy as np

from .generators import GenParams, generate_tcl
from .graph import Graph


def replicate_graph(g, copies):
    """Disjoint union of ``copies`` relabelled copies of ``g``.

    Keeps the degree distribution and multiplies ``N`` and ``M``.
    """
    e = g.edges
    edges = np.concatenate([e + k * g.n_nodes for k in range(copies)]) if copies else e[:0]
    return Graph(g.n_nodes * copies, edges)


def pi_max(g):
    return float(g.degrees.max() / (2.0 * g.n_edges)) if g.n_edges else 0.0


def retry_bound(g, slack=0.1):
    """Expected attempts per insertion allowed for ``g``: ``1/(1 - pi_max) + slack``."""
    return 1.0 / (1.0 - pi_max(g)) + slack


def bench_generation(g, scale, rho=0.0, repeats=5, seed=0):
    """Time TCL generation on 1x .. ``scale``x copies of ``g``.

    Each size gets one untimed warm-up run, then is timed ``repeats``
    times and the fastest run kept.

    Returns
    -------
    list of dict
        One row per multiple with ``edges``, ``seconds``, ``ratio`` to the
        1x time and the ``retry_ratio`` of the last run.
    """
    rows = []
    for k in range(1, scale + 1):
        big = replicate_graph(g, k)
        generate_tcl(big, GenParams(rho=rho), rng=np.random.default_rng([seed, k]))
        best = float("inf")
        metrics = None
        for r in range(repeats):
            gc.collect()
            gc.disable()  # as timeit does
            try:
                t0 = time.perf_counter()
                _, metrics = generate_tcl(big, GenParams(rho=rho), rng=np.random.default_rng([seed, k, r]))
                best = min(best, time.perf_counter() - t0)
            finally:
                gc.enable()
        rows.append({"multiple": k, "edges": big.n_edges, "seconds": best,
                     "retry_ratio": metrics.retry_ratio, "retry_bound": retry_bound(big)})
    base = rows[0]["seconds"]
    for row in rows:
        row["ratio"] = row["seconds"] / base
    return rows
