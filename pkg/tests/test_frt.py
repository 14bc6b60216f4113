from __future__ import annotations

import json
import math

import numpy as np
import pytest

from conftest import DATA_DIR, make_graph
from mbfkit.algebra import DISTANCE_MAPS, DistanceMap
from mbfkit.engine import AdjacencyOperator, apsp, mbf_run
from mbfkit.errors import InvalidParameterError, MalformedLeListError, MissingTraceError
from mbfkit.frt import (
    EmbedConfig,
    LeFilter,
    RandomOrder,
    build_context,
    build_frt_tree,
    compute_le_lists,
    harmonic,
    le_algorithm,
    le_filter,
    le_list_stats,
    le_lists_to_jsonl,
    reconstruct_path,
    sample_order,
    sample_tree,
    stretch_report,
    to_le_list,
    tree_distance,
    tree_edges,
    tree_to_tsv,
    validate_le_list,
)
from mbfkit.graph import dijkstra, load_graph, path_weight
from mbfkit.hopset import resolve_hopset
from mbfkit.simgraph import materialize_h


def test_le_filter_drops_dominated_entries():
    order = RandomOrder(rank=(2, 0, 3, 1), beta=1.5)
    x = DistanceMap({0: 0.0, 1: 2.0, 2: 1.0, 3: 5.0})
    assert le_filter(x, order) == DistanceMap({0: 0.0, 1: 2.0})
    assert to_le_list(le_filter(x, order)) == ((0.0, 0), (2.0, 1))


def test_le_filter_ties_keep_smaller_rank():
    order = RandomOrder(rank=(1, 0), beta=1.0)
    assert le_filter(DistanceMap({0: 3.0, 1: 3.0}), order) == DistanceMap({1: 3.0})


def test_validate_le_list():
    order = RandomOrder(rank=(2, 0, 1), beta=1.0)
    validate_le_list(((0.0, 0), (1.0, 2), (4.0, 1)), order)
    with pytest.raises(MalformedLeListError):
        validate_le_list(((0.0, 0), (1.0, 1), (4.0, 2)), order)
    with pytest.raises(MalformedLeListError):
        validate_le_list(((0.0, 0), (0.0, 2)), order)


def test_random_order_validation():
    with pytest.raises(InvalidParameterError):
        RandomOrder(rank=(0, 0), beta=1.0)
    with pytest.raises(InvalidParameterError):
        RandomOrder(rank=(0, 1), beta=2.0)
    order = sample_order(50, seed=3)
    assert order == sample_order(50, seed=3)
    assert 1.0 <= order.beta < 2.0
    assert order.rank[order.first()] == 0


def test_oracle_le_lists_match_exact_h_metric(small_graphs):
    for seed, g in enumerate(small_graphs[:3]):
        cfg = EmbedConfig(seed=seed, eps_hat=1.0)
        context = build_context(g, cfg)
        exact = mbf_run(apsp(g.n), AdjacencyOperator(materialize_h(context.H)))
        expected = tuple(to_le_list(le_filter(x, context.order)) for x in exact.state)
        got = compute_le_lists(g, cfg, context=context).lists
        assert got == expected
        for lst in got:
            validate_le_list(lst, context.order)


def test_le_lists_restricted_to_sources(small_graphs):
    g = small_graphs[1]
    sources = {1, 4, 7}
    lists = compute_le_lists(g, EmbedConfig(seed=2), sources=sources).lists
    for v, lst in enumerate(lists):
        assert lst
        assert {u for _, u in lst} <= sources
    assert lists[4][0] == (0.0, 4)


def test_tree_shape(small_graphs):
    for seed, g in enumerate(small_graphs):
        _, t = sample_tree(g, EmbedConfig(seed=seed))
        assert sorted(t.leaf_of) == list(range(g.n))
        assert all(t.nodes[leaf].level == 0 for leaf in t.leaf_of.values())
        root = t.nodes[t.root]
        assert root.parent == -1
        assert root.rep == 0
        assert all(t.nodes[leaf].key[-1] == root.lead for leaf in t.leaf_of.values())
        for child, parent, weight in tree_edges(t):
            assert t.nodes[parent].level == t.nodes[child].level + 1
            assert weight == pytest.approx(t.scale(t.nodes[child].level))
            assert t.nodes[child].key[1:] == t.nodes[parent].key


def test_tree_dominates_graph_metric(small_graphs):
    for seed, g in enumerate(small_graphs):
        _, t = sample_tree(g, EmbedConfig(seed=seed))
        for v in range(g.n):
            exact = dijkstra(g, v)
            assert tree_distance(t, v, v) == 0.0
            for w in range(v + 1, g.n):
                assert tree_distance(t, v, w) >= exact[w] * (1 - 1e-9)


def test_sampling_is_deterministic():
    g = make_graph(20, seed=6)
    _, a = sample_tree(g, EmbedConfig(seed=11), sample=2)
    _, b = sample_tree(g, EmbedConfig(seed=11), sample=2)
    assert a.nodes == b.nodes
    assert tree_to_tsv(a) == tree_to_tsv(b)


def test_stretch_report_has_no_violations():
    g = make_graph(16, seed=4)
    trees = [sample_tree(g, EmbedConfig(seed=1), sample=s)[1] for s in range(4)]
    report = stretch_report(g, trees)
    assert report.domination_violations == 0
    assert report.pairs == 16 * 15 // 2
    assert report.mean_ratio >= 1.0
    assert report.max_mean_ratio >= report.mean_ratio
    assert 0.0 <= report.fraction_within(1e9) == 1.0
    assert report.as_dict()["samples"] == 4


def test_reconstructed_paths_are_short_g_walks(small_graphs):
    for seed, g in enumerate(small_graphs[:3]):
        le_run, t = sample_tree(g, EmbedConfig(seed=seed, record_trace=True))
        aug = le_run.context.resolved.aug
        for child, parent, weight in tree_edges(t):
            walk = reconstruct_path(t, child, le_run.run.trace, aug)
            assert walk[0] == t.nodes[child].lead
            assert walk[-1] == t.nodes[parent].lead
            assert path_weight(g, walk) <= 1.5 * weight * (1 + 1e-9)


def test_reconstruct_path_errors(small_graphs):
    g = small_graphs[0]
    le_run, t = sample_tree(g, EmbedConfig(seed=0))
    aug = le_run.context.resolved.aug
    with pytest.raises(MissingTraceError):
        reconstruct_path(t, t.leaf_of[0], le_run.run.trace, aug)
    traced, t2 = sample_tree(g, EmbedConfig(seed=0, record_trace=True))
    with pytest.raises(InvalidParameterError):
        reconstruct_path(t2, t2.root, traced.run.trace, aug)
    with pytest.raises(InvalidParameterError):
        reconstruct_path(t2, len(t2.nodes), traced.run.trace, aug)


def test_build_tree_rejects_bad_lists():
    order = RandomOrder(rank=(0, 1), beta=1.0)
    with pytest.raises(MalformedLeListError):
        build_frt_tree([((0.0, 0),), ((1.0, 0),)], order, w_min=1.0)
    with pytest.raises(InvalidParameterError):
        build_frt_tree([((0.0, 0),), ((0.0, 1), (1.0, 0))], order, w_min=0.0)
    with pytest.raises(InvalidParameterError):
        build_frt_tree([], order, w_min=1.0)


def test_two_node_tree():
    order = RandomOrder(rank=(0, 1), beta=1.0)
    t = build_frt_tree([((0.0, 0),), ((0.0, 1), (4.0, 0))], order, w_min=4.0)
    # 叶子层到根的边权 β·2^2 = 4
    assert tree_distance(t, 0, 1) == 8.0
    assert t.nodes[t.root].lead == 0


def test_serializers(small_graphs):
    g = small_graphs[0]
    le_run, t = sample_tree(g, EmbedConfig(seed=3))
    tsv = tree_to_tsv(t).splitlines()
    assert tsv[0] == "node\tparent\tweight\tleaf"
    assert len(tsv) == len(t.nodes) + 1
    rows = [json.loads(line) for line in le_lists_to_jsonl(le_run.lists).splitlines()]
    assert [row["node"] for row in rows] == list(range(g.n))
    assert rows[0]["list"][0] == [0.0, 0]


@pytest.mark.slow
def test_le_list_length_is_logarithmic():
    g = load_graph(DATA_DIR / "graph128.txt")
    lists = compute_le_lists(g, EmbedConfig(seed=5)).lists
    stats = le_list_stats(lists)
    assert stats.harmonic_n == pytest.approx(harmonic(128))
    assert stats.mean_length <= 2 * stats.harmonic_n
    assert stats.max_length <= 10 * stats.harmonic_n


def _rand_dmap(rng: np.random.Generator, n: int = 6) -> DistanceMap:
    nodes = rng.choice(n, size=rng.integers(0, n + 1), replace=False)
    return DistanceMap({int(v): float(rng.integers(0, 20)) for v in nodes})


def test_le_filter_is_congruence():
    rng = np.random.default_rng(21)
    M = DISTANCE_MAPS
    for _ in range(10_000):
        r = LeFilter(RandomOrder(rank=tuple(int(i) for i in rng.permutation(6)), beta=1.0)).project
        x, y = _rand_dmap(rng), _rand_dmap(rng)
        s = math.inf if rng.random() < 0.1 else float(rng.integers(0, 20))
        assert r(M.oplus(x, y)) == r(M.oplus(r(x), r(y)))
        assert r(M.scale(s, x)) == r(M.scale(s, r(x)))
        assert r(r(x)) == r(x)


@pytest.mark.slow
def test_le_list_mean_length_stays_near_harmonic_number():
    n = 1024
    bound = harmonic(n)
    for seed in range(20):
        g = make_graph(n, seed)
        run = mbf_run(le_algorithm(n, sample_order(n, seed)), AdjacencyOperator(g))
        assert run.converged
        stats = le_list_stats([to_le_list(x) for x in run.state])
        assert 0.5 * bound <= stats.mean_length <= 3 * bound


@pytest.mark.slow
def test_expected_stretch_is_logarithmic_on_most_pairs():
    g = load_graph(DATA_DIR / "graph128.txt")
    cfg = EmbedConfig(seed=13)
    resolved = resolve_hopset(g, cfg.hopset)
    trees = [sample_tree(g, cfg, sample=s, resolved=resolved)[1] for s in range(100)]
    report = stretch_report(g, trees)
    assert report.domination_violations == 0
    assert report.fraction_within(16 * math.log(g.n)) >= 0.95
