import warnings

import numpy as np
import pytest
from hypothesis import given, settings

from tclgen import (
    AgedEdgeList,
    CollisionQueue,
    GenParams,
    Graph,
    GraphTooDense,
    IsolatedNode,
    generate_cl_fast,
    generate_cl_slow,
    generate_tcl,
    two_hop_walk,
)
from tclgen.bench import retry_bound
from tclgen.datasets import load_fixture
from tclgen.generators import ClampWarning
from tclgen.stats import CcdfSeries, _ccdf, global_clustering, ks_distance

from conftest import cycle, graphs, path3, star, triangle


def _spawn(seed, n):
    return np.random.default_rng(seed).spawn(n)


class TestAgedEdgeList:
    def test_fifo_eviction(self):
        w = AgedEdgeList(4)
        for e in [(0, 1), (2, 1), (3, 0)]:
            w.add(*e)
        assert w.evict_oldest() == (0, 1)
        assert w.evict_oldest() == (1, 2)
        assert w.edges == {(0, 3)}
        assert list(w.order) == [(0, 3)]

    def test_views_stay_consistent(self):
        rng = np.random.default_rng(0)
        w = AgedEdgeList(30)
        for _ in range(2000):
            i, j = rng.integers(30, size=2).tolist()
            if i != j and (i, j) not in w:
                w.add(i, j)
            if len(w) > 40:
                w.evict_oldest()
            assert set(w.order) == w.edges and len(w.order) == len(w.edges)
        for i in range(30):
            assert sorted(w.neighbors(i)) == sorted(
                b if a == i else a for a, b in w.edges if i in (a, b))

    def test_m1_evicts_previous(self):
        w = AgedEdgeList(3)
        w.add(0, 1)
        w.add(1, 2)
        assert w.evict_oldest() == (0, 1)
        assert w.edges == {(1, 2)}


def test_collision_queue_fifo():
    q = CollisionQueue()
    for v in [3, 1, 3]:
        q.push(v)
    assert len(q) == 3
    assert [q.pop(), q.pop(), q.pop()] == [3, 1, 3]
    assert not q


def test_params_validate_rho():
    with pytest.raises(ValueError):
        GenParams(rho=1.5)


class TestSlowCL:
    def test_single_pair(self):
        g = Graph(2, [(0, 1)])
        f = np.mean([generate_cl_slow(g, r).n_edges for r in _spawn(0, 10_000)])
        assert abs(f - 0.5) <= 0.015

    def test_four_cycle_every_pair_half(self):
        g = cycle(4)
        counts = np.zeros((4, 4))
        for r in _spawn(1, 10_000):
            for i, j in generate_cl_slow(g, r).edges.tolist():
                counts[i, j] += 1
        iu = np.triu_indices(4, 1)
        np.testing.assert_allclose(counts[iu] / 10_000, 0.5, atol=0.02)

    def test_triangle_mean_degree(self):
        # every pair with probability 2*2/6, so expected degree 2 * 2/3
        deg = np.mean([generate_cl_slow(triangle(), r).degrees.mean() for r in _spawn(2, 10_000)])
        assert abs(deg - 4 / 3) <= 0.05

    def test_clamp_warning(self):
        g = Graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6), (0, 7)])
        with pytest.warns(ClampWarning):
            generate_cl_slow(g, 0)

    def test_no_warning_when_sparse(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            generate_cl_slow(cycle(10), 0)

    def test_empty(self):
        assert generate_cl_slow(Graph(4), 0).n_edges == 0


class TestFastCL:
    def test_triangle_always_complete(self):
        degs = []
        for r in _spawn(3, 10_000):
            h, _ = generate_cl_fast(triangle(), rng=r)
            assert h.n_edges == 3
            degs.append(h.degrees.mean())
        assert abs(np.mean(degs) - 2.0) <= 0.05

    def test_empty_graph(self):
        h, m = generate_cl_fast(Graph(5), rng=0)
        assert h.n_edges == 0 and m.attempts == 0

    @settings(max_examples=30)
    @given(graphs(max_nodes=30))
    def test_exact_edge_count(self, g):
        try:
            h, m = generate_cl_fast(g, rng=0)
        except GraphTooDense:
            return
        assert h.n_edges == g.n_edges == m.insertions
        assert m.attempts == m.insertions + m.collisions

    def test_queue_drained_before_fresh_draws(self):
        g = load_fixture("hub_201")
        trace = []
        generate_cl_fast(g, rng=5, trace=trace)
        assert any(src == "queue" for src, _ in trace)
        assert all(qlen == 0 for src, qlen in trace if src == "pi")
        assert all(qlen > 0 for src, qlen in trace if src == "queue")

    def test_uncorrected_never_queues(self):
        trace = []
        generate_cl_fast(load_fixture("hub_201"), rng=5, corrected=False, trace=trace)
        assert {src for src, _ in trace} == {"pi"}

    def test_hub_correction_contrast(self):
        g = load_fixture("hub_201")
        runs = _spawn(6, 2000)
        cor = np.mean([generate_cl_fast(g, rng=r)[0].degree(0) for r in runs])
        unc = np.mean([generate_cl_fast(g, rng=r, corrected=False)[0].degree(0) for r in _spawn(6, 2000)])
        assert abs(cor - 50) <= 0.03 * 50
        assert unc < cor

    def test_too_dense(self):
        with pytest.raises(GraphTooDense):
            generate_cl_fast(star(5), GenParams(max_attempts=3), rng=0)

    def test_seed_determinism(self):
        g = load_fixture("powerlaw_500")
        a, _ = generate_cl_fast(g, GenParams(seed=11))
        b, _ = generate_cl_fast(g, GenParams(seed=11))
        c, _ = generate_cl_fast(g, GenParams(seed=12))
        assert a == b and a != c


class TestTwoHopWalk:
    def test_path_forced_through_middle(self):
        rng = np.random.default_rng(7)
        ends = np.bincount([two_hop_walk(path3(), 0, rng) for _ in range(100_000)], minlength=3) / 100_000
        np.testing.assert_allclose(ends, [0.5, 0, 0.5], atol=0.01)

    def test_star_leaf_lands_on_leaves(self):
        rng = np.random.default_rng(8)
        ends = np.bincount([two_hop_walk(star(4), 1, rng) for _ in range(100_000)], minlength=5) / 100_000
        np.testing.assert_allclose(ends, [0, 0.25, 0.25, 0.25, 0.25], atol=0.01)

    def test_isolated(self):
        with pytest.raises(IsolatedNode):
            two_hop_walk(Graph(3, [(0, 1)]), 2)

    def test_works_on_aged_list(self):
        w = AgedEdgeList(3)
        w.add(0, 1)
        w.add(1, 2)
        assert two_hop_walk(w, 0, 0) in (0, 2)


class TestTCL:
    @settings(max_examples=30)
    @given(graphs(max_nodes=30))
    def test_exact_edge_count_with_checks(self, g):
        try:
            h, m = generate_tcl(g, GenParams(rho=0.5, check_invariants=True), rng=1)
        except GraphTooDense:
            return
        assert h.n_edges == g.n_edges

    def test_edge_count_on_fixture(self):
        g = load_fixture("powerlaw_1000")
        for rho in (0.0, 0.5, 0.9):
            h, m = generate_tcl(g, GenParams(rho=rho, check_invariants=True), rng=2)
            assert h.n_edges == g.n_edges
            assert m.insertions == 2 * g.n_edges

    def test_saturated_graph_is_returned_as_is(self):
        h, m = generate_tcl(triangle(), GenParams(rho=0.0, seed=7))
        assert h == triangle()

    def test_iterations_override(self):
        g = load_fixture("powerlaw_500")
        _, m = generate_tcl(g, GenParams(iterations=10), rng=3)
        assert m.insertions == g.n_edges + 10

    def test_fallback_counted(self):
        # high rho on a sparse matching keeps creating degree-0 start nodes
        g = Graph(40, [(2 * k, 2 * k + 1) for k in range(20)])
        _, m = generate_tcl(g, GenParams(rho=0.9), rng=4)
        assert m.fallbacks > 0

    def test_seed_streams(self):
        g = load_fixture("powerlaw_500")
        a, _ = generate_tcl(g, GenParams(rho=0.4, seed=9))
        b, _ = generate_tcl(g, GenParams(rho=0.4, seed=9))
        assert a == b

    def test_rho_zero_matches_fast_cl_degrees(self):
        g = load_fixture("powerlaw_500")
        cl = np.concatenate([generate_cl_fast(g, rng=r)[0].degrees for r in _spawn(10, 200)])
        tcl = np.concatenate([generate_tcl(g, GenParams(rho=0.0), rng=r)[0].degrees for r in _spawn(11, 200)])
        ka = _pooled_ccdf(cl)
        kb = _pooled_ccdf(tcl)
        assert ks_distance(ka, kb) <= 0.02

    def test_clustering_rises_with_rho(self):
        g = load_fixture("powerlaw_1000")
        lo = np.mean([global_clustering(generate_tcl(g, GenParams(rho=0.0), rng=r)[0]) for r in _spawn(12, 20)])
        hi = np.mean([global_clustering(generate_tcl(g, GenParams(rho=0.9), rng=r)[0]) for r in _spawn(13, 20)])
        assert hi > lo

    def test_retry_ratio_bounded(self):
        g = load_fixture("powerlaw_1000")
        ratios = [generate_tcl(g, GenParams(rho=0.5), rng=r)[1].retry_ratio for r in _spawn(14, 20)]
        assert np.mean(ratios) <= retry_bound(g)

    def test_queue_drained_before_fresh_draws(self):
        trace = []
        generate_tcl(load_fixture("powerlaw_1000"), GenParams(rho=0.8), rng=15, trace=trace)
        assert all(qlen == 0 for src, qlen in trace if src == "pi")


def _pooled_ccdf(degrees):
    return CcdfSeries(_ccdf(degrees, len(degrees)), len(degrees))
