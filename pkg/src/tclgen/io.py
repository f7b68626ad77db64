"""Edge-list files, run reports and series export.

Edge lists are ASCII, one whitespace-separated integer pair per line,
``#`` comments. Labels in the file are compacted to dense IDs on load and
restored on write. A ``# nodes: N`` header keeps degree-0 nodes of an
identity-labelled graph across a round trip.
"""
import csv
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from .exceptions import GraphError
from .graph import Graph

_NODES_HEADER = re.compile(r"^\s*nodes:\s*(\d+)\s*$")

REPORT_SCHEMA_VERSION = "1.0"


class EdgeListError(GraphError):
    """Unparseable edge-list input."""


def tool_version():
    try:
        return version("artifact")
    except PackageNotFoundError:  # pragma: no cover
        return "0+unknown"


@dataclass
class IngestOptions:
    """How an edge list is turned into a graph.

    ``reflect`` marks the input as directed; since graphs are undirected,
    each arc ``(u, v)`` becomes the edge ``{u, v}`` either way, and the
    flag is echoed in reports. ``degree_cap`` removes every node whose
    degree after symmetrization exceeds it, once.
    """

    reflect: bool = True
    degree_cap: int = None
    comment_prefix: str = "#"

    def __post_init__(self):
        if self.degree_cap is not None and self.degree_cap < 1:
            raise ValueError("degree_cap must be at least 1")


def _parse(lines, prefix):
    pairs = []
    declared = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(prefix):
            m = _NODES_HEADER.match(line[len(prefix):])
            if m:
                declared = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected two node IDs, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: node IDs must be integers, got {line!r}") from None
        if u < 0 or v < 0:
            raise EdgeListError(f"line {lineno}: node IDs must be non-negative, got {line!r}")
        pairs.append((u, v))
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    return arr, declared


def graph_from_labelled_pairs(pairs, opts=None, declared_nodes=None):
    """Compact labelled pairs into a graph, applying the degree cap."""
    opts = opts or IngestOptions()
    if declared_nodes is not None and (pairs.size == 0 or pairs.max() < declared_nodes):
        labels = np.arange(declared_nodes, dtype=np.int64)
    else:
        labels = np.unique(pairs)
    dense = np.searchsorted(labels, pairs)
    g = Graph(len(labels), dense)
    if opts.degree_cap is not None:
        keep = g.degrees <= opts.degree_cap
        if not keep.all():
            new_id = np.cumsum(keep) - 1
            e = g.edges
            e = e[keep[e[:, 0]] & keep[e[:, 1]]]
            labels = labels[keep]
            g = Graph(len(labels), new_id[e])
    identity = np.array_equal(labels, np.arange(len(labels)))
    return Graph(g.n_nodes, g.edges, labels=None if identity else labels)


def load_edge_list(path, opts=None):
    """Read an edge list into a ``Graph``.

    Reflection, deduplication and self-loop removal happen before the
    degree cap; the cap is applied once, not to a fixed point.
    """
    opts = opts or IngestOptions()
    with open(path, "r", encoding="ascii") as fh:
        pairs, declared = _parse(fh, opts.comment_prefix)
    return graph_from_labelled_pairs(pairs, opts, declared)


def write_edge_list(g, path):
    """Write one ``i j`` line per edge, ``i < j``, sorted, in label space."""
    edges = g.edges
    header = ""
    if g.labels is not None:
        edges = np.sort(g.labels[edges], axis=1)
        edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    elif g.n_nodes and (g.degrees == 0).any():
        header = f"# nodes: {g.n_nodes}\n"
    body = "".join(f"{a} {b}\n" for a, b in edges.tolist())
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + body)


@dataclass
class RunReport:
    command: str
    parameters: dict
    outputs: dict = field(default_factory=dict)
    tool_version: str = field(default_factory=tool_version)

    def as_dict(self):
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": self.command,
            "tool_version": self.tool_version,
            "parameters": self.parameters,
            "outputs": self.outputs,
        }

    def to_json(self):
        return json.dumps(_jsonable(self.as_dict()), indent=2, sort_keys=True) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and obj != obj:
        return None
    return obj


def report_schema():
    return json.loads((resources.files("tclgen") / "schema" / "report.schema.json").read_text())


def write_series_csv(points, path, header=("x", "y")):
    """Two-column CSV of ``(x, y)`` points."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(points)
