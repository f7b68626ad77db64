"""Synthetic seed graphs shipped with the package.

The edge lists under ``data/`` are produced by ``make_fixture`` and can be
rebuilt with ``python -m tclgen.datasets``.
"""
from importlib import resources
from pathlib import Path

import numpy as np

from .graph import Graph

# name -> (builder, kwargs)
FIXTURES = {
    "powerlaw_1000": ("powerlaw", dict(n_nodes=1000, exponent=1.5, min_degree=2, max_degree=60, seed=1000)),
    "powerlaw_500": ("powerlaw", dict(n_nodes=500, exponent=1.5, min_degree=2, max_degree=40, seed=500)),
    "skewed_300": ("powerlaw", dict(n_nodes=300, exponent=1.5, min_degree=2, max_degree=15, seed=300)),
    "skewed_200": ("powerlaw", dict(n_nodes=200, exponent=1.5, min_degree=2, max_degree=12, seed=200)),
    "hub_201": ("hub", dict(hub_degree=50, n_leaves=200)),
}


def powerlaw_configuration(n_nodes, exponent=1.5, min_degree=2, max_degree=None, seed=None):
    """Heavy-tailed graph by stub matching.

    Target degrees are ``floor(min_degree * X)`` with ``X`` Pareto
    distributed (tail index ``exponent``), capped at ``max_degree``. Stubs
    are shuffled and paired; self-loops and repeated pairs are dropped, so
    realized degrees can fall slightly below their targets.
    """
    rng = np.random.default_rng(seed)
    deg = np.floor(min_degree * (rng.pareto(exponent, n_nodes) + 1.0)).astype(np.int64)
    if max_degree is not None:
        deg = np.minimum(deg, max_degree)
    if deg.sum() % 2:
        deg[int(np.argmin(deg))] += 1
    stubs = np.repeat(np.arange(n_nodes), deg)
    rng.shuffle(stubs)
    return Graph(n_nodes, stubs.reshape(-1, 2))


def hub_graph(hub_degree=50, n_leaves=200):
    """One hub joined to ``hub_degree`` nodes, every other node of degree 2.

    The hub's neighbors are paired off to each other; the remaining
    nodes form a single cycle. Requires an even ``hub_degree`` and at
    least three non-hub-neighbors.
    """
    if hub_degree % 2 or n_leaves - hub_degree < 3:
        raise ValueError("need an even hub degree and at least 3 nodes outside the hub's neighborhood")
    edges = [(0, k) for k in range(1, hub_degree + 1)]
    edges += [(k, k + 1) for k in range(1, hub_degree + 1, 2)]
    ring = list(range(hub_degree + 1, n_leaves + 1))
    edges += [(a, b) for a, b in zip(ring, ring[1:] + ring[:1])]
    return Graph(n_leaves + 1, edges)


def make_fixture(name):
    kind, kwargs = FIXTURES[name]
    if kind == "powerlaw":
        return powerlaw_configuration(**kwargs)
    return hub_graph(**kwargs)


def fixture_path(name):
    return resources.files("tclgen") / "data" / f"{name}.edges"


def load_fixture(name):
    """Load a shipped fixture graph by name."""
    from .io import load_edge_list

    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
    with resources.as_file(fixture_path(name)) as p:
        return load_edge_list(p)


def _rebuild(out_dir=None):
    from .io import write_edge_list

    out_dir = Path(out_dir) if out_dir else Path(__file__).parent / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in FIXTURES:
        write_edge_list(make_fixture(name), out_dir / f"{name}.edges")


if __name__ == "__main__":
    _rebuild()
