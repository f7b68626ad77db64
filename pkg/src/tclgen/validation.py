"""Input checks shared by the estimators and the CLI."""
import numbers

import numpy as np

from .graph import Graph


def check_graph(X, *, allow_empty=False):
    """Coerce ``X`` to a ``Graph``.

    Accepts a ``Graph``, an ``(M, 2)`` array-like of non-negative integer
    node IDs, or any object with networkx-style ``nodes()`` and ``edges()``
    methods. Foreign node objects are mapped to dense IDs in iteration
    order; integer nodes are kept as labels.
    """
    if isinstance(X, Graph):
        g = X
    elif hasattr(X, "edges") and hasattr(X, "nodes") and callable(X.nodes):
        nodes = list(X.nodes())
        index = {v: k for k, v in enumerate(nodes)}
        edges = np.array([(index[u], index[v]) for u, v in X.edges()], dtype=np.int64).reshape(-1, 2)
        labels = None
        if nodes and all(isinstance(v, numbers.Integral) and v >= 0 for v in nodes):
            labels = np.array(nodes, dtype=np.int64)
            order = np.argsort(labels, kind="stable")
            rank = np.empty_like(order)
            rank[order] = np.arange(len(order))
            edges = rank[edges]
            labels = labels[order]
            if np.array_equal(labels, np.arange(len(labels))):
                labels = None
        g = Graph(len(nodes), edges, labels=labels)
    else:
        arr = np.asarray(X)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected an (M, 2) array of node pairs, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.mod(arr, 1) == 0):
                raise ValueError("node IDs must be integers")
            arr = arr.astype(np.int64)
        n = int(arr.max()) + 1 if arr.size else 0
        g = Graph(n, arr)
    if not allow_empty and g.n_edges == 0:
        raise ValueError("graph has no edges")
    return g


def check_rho(rho, allow_auto=True):
    if allow_auto and isinstance(rho, str):
        if rho != "auto":
            raise ValueError(f"rho must be a number in [0, 1] or 'auto', got {rho!r}")
        return rho
    if not isinstance(rho, numbers.Real) or not 0.0 <= float(rho) <= 1.0:
        raise ValueError(f"rho must lie in [0, 1], got {rho!r}")
    return float(rho)


def check_positive_int(value, name, allow_none=True):
    if value is None and allow_none:
        return None
    if not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
