import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings

from tclgen import Graph
from tclgen.io import (
    EdgeListError,
    IngestOptions,
    RunReport,
    load_edge_list,
    report_schema,
    write_edge_list,
    write_series_csv,
)

from conftest import graphs, triangle


def test_load_simple(tmp_edges):
    g = load_edge_list(tmp_edges("0 1\n1 2"))
    assert (g.n_nodes, g.n_edges) == (3, 2)


def test_load_reflection_collapses(tmp_edges):
    g = load_edge_list(tmp_edges("0 1\n1 0\n"), IngestOptions(reflect=True))
    assert (g.n_nodes, g.n_edges) == (2, 1)


def test_comments_blank_lines_and_whitespace(tmp_edges):
    g = load_edge_list(tmp_edges("# header\n\n0\t1\n  1   2  \n", "c.txt"), IngestOptions())
    assert g.n_edges == 2


def test_custom_comment_prefix(tmp_edges):
    g = load_edge_list(tmp_edges("% c\n0 1\n"), IngestOptions(comment_prefix="%"))
    assert g.n_edges == 1


@pytest.mark.parametrize("text, lineno", [("0 1\n1 x\n", 2), ("0 1 2\n", 1), ("0 -1\n", 1), ("3\n", 1)])
def test_parse_errors_report_line(tmp_edges, text, lineno):
    with pytest.raises(EdgeListError, match=f"line {lineno}"):
        load_edge_list(tmp_edges(text))


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_edge_list(tmp_path / "nope.txt")


def test_degree_cap_removes_hub(tmp_edges):
    lines = [f"0 {k}" for k in range(1, 1002)] + ["1 2", "3 4"]
    g = load_edge_list(tmp_edges("\n".join(lines)), IngestOptions(degree_cap=1000))
    assert g.n_nodes == 1001
    assert g.n_edges == 2
    assert 0 not in g.labels.tolist()


def test_degree_cap_applied_once(tmp_edges):
    # 0 has degree 3 and is removed; 1 then drops to degree 2 but had 3 before the cap
    text = "0 1\n0 2\n0 3\n1 4\n1 5\n"
    g = load_edge_list(tmp_edges(text), IngestOptions(degree_cap=2))
    assert sorted(g.labels.tolist()) == [2, 3, 4, 5]
    assert g.n_edges == 0


def test_degree_cap_validation():
    with pytest.raises(ValueError):
        IngestOptions(degree_cap=0)


def test_sparse_labels_compacted(tmp_edges):
    g = load_edge_list(tmp_edges("10 30\n30 1000\n"))
    assert g.n_nodes == 3
    assert g.labels.tolist() == [10, 30, 1000]


def test_write_triangle(tmp_path):
    p = tmp_path / "t.txt"
    write_edge_list(triangle(), p)
    assert p.read_bytes() == b"0 1\n0 2\n1 2\n"


def test_write_empty(tmp_path):
    p = tmp_path / "e.txt"
    write_edge_list(Graph(0), p)
    assert p.read_bytes() == b""


def test_write_in_label_space(tmp_edges, tmp_path):
    g = load_edge_list(tmp_edges("1000 30\n30 10\n"))
    out = tmp_path / "o.txt"
    write_edge_list(g, out)
    assert out.read_text() == "10 30\n30 1000\n"


def test_isolated_nodes_survive_round_trip(tmp_path):
    g = Graph(5, [(0, 3)])
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    assert load_edge_list(p).n_nodes == 5


@settings(max_examples=100)
@given(graphs(max_nodes=30))
def test_round_trip(tmp_path_factory, g):
    p = tmp_path_factory.mktemp("rt") / "g.txt"
    write_edge_list(g, p)
    h = load_edge_list(p)
    assert h == g
    write_edge_list(h, p)
    assert load_edge_list(p) == h


def test_report_validates_and_is_sorted():
    r = RunReport("fit", {"seed": 1, "input": "x"}, {"em": {"rho_final": 0.1, "converged": True, "per_iteration": []}})
    d = json.loads(r.to_json())
    jsonschema.validate(d, report_schema())
    assert d["schema_version"] == "1.0"
    assert r.to_json() == RunReport("fit", {"input": "x", "seed": 1}, r.outputs).to_json()


def test_report_numpy_values_serialize():
    r = RunReport("stats", {"seed": None}, {"x": np.float64(0.5), "n": np.int64(3), "a": np.arange(2)})
    assert json.loads(r.to_json())["outputs"] == {"x": 0.5, "n": 3, "a": [0, 1]}


def test_series_csv(tmp_path):
    p = tmp_path / "s.csv"
    write_series_csv([(0, 1.0), (2, 0.5)], p, ("degree", "ccdf"))
    assert p.read_text() == "degree,ccdf\n0,1.0\n2,0.5\n"
