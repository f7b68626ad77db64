"""Chung-Lu and Transitive Chung-Lu random graphs.

Learn a single transitivity parameter from an observed network and
generate synthetic graphs that keep its degree distribution while adding
triangle-closing edges.
"""
from .exceptions import (
    EmptyGraph,
    EmptySample,
    EmptySeries,
    GraphTooDense,
    IsolatedNode,
    NoTriples,
    NotAnEdge,
)
from .graph import Graph, PiSampler, build_graph, pi_sample, uniform_edge, uniform_neighbor
from .generators import (
    AgedEdgeList,
    CollisionQueue,
    GenMetrics,
    GenParams,
    generate_cl_fast,
    generate_cl_slow,
    generate_tcl,
    two_hop_walk,
)
from .fitting import EdgeResponsibility, EmConfig, EmTrace, e_step, fit_rho, m_step
from .estimator import ChungLu, TransitiveChungLu

__all__ = [
    "AgedEdgeList",
    "ChungLu",
    "CollisionQueue",
    "EdgeResponsibility",
    "EmConfig",
    "EmTrace",
    "EmptyGraph",
    "EmptySample",
    "EmptySeries",
    "GenMetrics",
    "GenParams",
    "Graph",
    "GraphTooDense",
    "IsolatedNode",
    "NoTriples",
    "NotAnEdge",
    "PiSampler",
    "TransitiveChungLu",
    "build_graph",
    "e_step",
    "fit_rho",
    "generate_cl_fast",
    "generate_cl_slow",
    "generate_tcl",
    "m_step",
    "pi_sample",
    "two_hop_walk",
    "uniform_edge",
    "uniform_neighbor",
]
