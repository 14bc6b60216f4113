from __future__ import annotations

import json

import networkx as nx
import numpy as np
import pytest

from conftest import make_graph
from mbfkit.apps import (
    BabSolution,
    Cable,
    Demand,
    RootedTree,
    approx_metric,
    binarize,
    buy_at_bulk,
    choose_cable,
    kmedian,
    kmedian_bruteforce,
    kmedian_candidates,
    kmedian_objective,
    kmedian_tree_dp,
    load_bab_instance,
    route_on_tree,
    tree_kmedian_bruteforce,
)
from mbfkit.errors import CapExceededError, GraphParseError, InvalidParameterError
from mbfkit.frt import EmbedConfig, build_context, distance_matrix, sample_tree, tree_distance
from mbfkit.graph import WeightedGraph
from mbfkit.hopset import HopsetConfig


# ---- 近似度量 ----


def test_metric_is_symmetric_and_sandwiched(small_graphs):
    g = small_graphs[2]
    metric = approx_metric(g, EmbedConfig(seed=4))
    exact = distance_matrix(g)
    assert metric.n == g.n
    assert np.array_equal(metric.table, metric.table.T)
    assert np.all(np.diag(metric.table) == 0.0)
    assert np.all(metric.table >= exact * (1 - 1e-12))
    assert np.all(metric.table <= metric.bound_factor * exact * (1 + 1e-12))
    assert metric.bound_factor >= 1.0
    assert len(metric.as_rows()) == g.n


def test_metric_is_exact_without_level_penalty(small_graphs):
    g = small_graphs[0]
    cfg = EmbedConfig(seed=1, eps_hat=0.0, hopset=HopsetConfig(d=g.n - 1))
    metric = approx_metric(g, cfg)
    assert np.allclose(metric.table, distance_matrix(g))
    assert metric.bound_factor == 1.0
    assert metric.distance(0, 1) == pytest.approx(distance_matrix(g)[0, 1])


def test_metric_table_cap(small_graphs):
    with pytest.raises(CapExceededError):
        approx_metric(small_graphs[0], EmbedConfig(), table_cap=4)


# ---- 树上的 k-median ----


def _random_rooted_tree(rng: np.random.Generator, size: int) -> RootedTree:
    parent = [-1] + [int(rng.integers(0, u)) for u in range(1, size)]
    weight = [0.0] + [float(rng.integers(1, 10)) for _ in range(1, size)]
    has_child = {p for p in parent if p >= 0}
    label, next_label = [], 0
    for u in range(size):
        if u in has_child:
            label.append(-1)
        else:
            label.append(next_label)
            next_label += 1
    return RootedTree(parent=parent, weight=weight, label=label)


@pytest.mark.slow
def test_tree_dp_matches_bruteforce():
    rng = np.random.default_rng(12)
    for _ in range(500):
        rt = _random_rooted_tree(rng, int(rng.integers(2, 12)))
        leaves = sorted(rt.leaves())
        weights = {v: float(rng.integers(0, 6)) for v in leaves}
        for k in (1, 2, 3):
            dp = kmedian_tree_dp(rt, weights, k)
            brute = tree_kmedian_bruteforce(rt, weights, k)
            assert dp.cost == pytest.approx(brute.cost)
            assert 1 <= len(dp.facilities) <= k
            assert dp.facilities <= set(leaves)
            # 回溯出的设施集合确实达到 DP 代价
            dist = rt.leaf_distances()
            achieved = sum(weights[v] * min(dist[(v, f)] for f in dp.facilities) for v in leaves)
            assert achieved == pytest.approx(dp.cost)


def test_tree_dp_rejects_bad_k():
    rt = RootedTree(parent=[-1, 0, 0], weight=[0.0, 1.0, 2.0], label=[-1, 0, 1])
    with pytest.raises(InvalidParameterError):
        kmedian_tree_dp(rt, {0: 1.0, 1: 1.0}, 0)
    # 两个叶子开一个设施：开在权重大的那边
    result = kmedian_tree_dp(rt, {0: 1.0, 1: 5.0}, 1)
    assert result.facilities == frozenset({1})
    assert result.cost == 3.0


def test_binarize_preserves_leaf_distances(small_graphs):
    for seed, g in enumerate(small_graphs):
        _, t = sample_tree(g, EmbedConfig(seed=seed))
        rt = binarize(t)
        assert all(len(kids) <= 2 for kids in rt.children)
        assert sorted(rt.leaves()) == list(range(g.n))
        dist = rt.leaf_distances()
        for v in range(g.n):
            for w in range(v + 1, g.n):
                assert dist[(v, w)] == pytest.approx(tree_distance(t, v, w))


# ---- 图上的 k-median ----


def test_kmedian_objective_and_bruteforce(path3):
    assert kmedian_objective(path3, {1}) == 3.0
    assert kmedian_bruteforce(path3, 1) == (3.0, frozenset({1}))
    with pytest.raises(InvalidParameterError):
        kmedian_objective(path3, set())
    with pytest.raises(CapExceededError):
        kmedian_bruteforce(make_graph(20, seed=0), 2)


def test_kmedian_with_k_equal_n_opens_everything(small_graphs):
    g = small_graphs[0]
    solution = kmedian(g, g.n, EmbedConfig(seed=0))
    assert solution.facilities == frozenset(range(g.n))
    assert solution.objective == 0.0
    assert solution.tree_cost is None


def test_kmedian_is_feasible_and_no_better_than_optimum(small_graphs):
    for seed, g in enumerate(small_graphs[:3]):
        for k in (1, 2):
            solution = kmedian(g, k, EmbedConfig(seed=seed))
            optimum, _ = kmedian_bruteforce(g, k)
            assert 1 <= len(solution.facilities) <= k
            assert solution.facilities <= solution.candidates
            assert solution.objective == pytest.approx(kmedian_objective(g, solution.facilities))
            assert solution.objective >= optimum - 1e-9
            assert solution.as_dict()["facilities"] == sorted(solution.facilities)


def test_kmedian_candidate_rounds():
    g = make_graph(40, seed=13)
    context = build_context(g, EmbedConfig(seed=13))
    Q = kmedian_candidates(context, 1)
    # 每轮 12 个：40 → 20 → 8，最后一轮全部收入
    assert 8 < len(Q) <= 32
    assert Q <= frozenset(range(g.n))
    assert Q == kmedian_candidates(context, 1)
    assert kmedian_candidates(context, 40) == frozenset(range(40))
    with pytest.raises(InvalidParameterError):
        kmedian_candidates(context, 0)


def test_kmedian_rejects_bad_k(path3):
    with pytest.raises(InvalidParameterError):
        kmedian(path3, 0, EmbedConfig())


# ---- buy-at-bulk ----


def test_choose_cable_prefers_cheapest_then_lowest_index():
    cables = [Cable(capacity=1.0, cost=1.0), Cable(capacity=10.0, cost=4.0)]
    assert choose_cable(3.0, cables) == (0, 3, 3.0)
    assert choose_cable(20.0, cables) == (1, 2, 8.0)
    assert choose_cable(4.0, cables) == (0, 4, 4.0)


def test_bab_without_demands_costs_nothing(small_graphs):
    g = small_graphs[0]
    solution = buy_at_bulk(g, [], [Cable(1.0, 1.0)], EmbedConfig(seed=2))
    assert solution.cost == 0.0
    assert solution.tree_cost == 0.0
    assert solution.as_dict()["edges"] == []


def test_bab_on_single_edge():
    g = WeightedGraph.from_edges(2, [(0, 1, 5.0)])
    solution = buy_at_bulk(g, [Demand(0, 1, 3.0)], [Cable(capacity=2.0, cost=1.0)], EmbedConfig(seed=0))
    assert solution.installation == {(0, 1, 0): 2}
    assert solution.cost == 10.0
    assert solution.capacity([Cable(2.0, 1.0)], 1, 0) == 4.0


def _check_bab_solution(g: WeightedGraph, demands: list[Demand], cables: list[Cable], solution: BabSolution) -> None:
    for (u, v), load in solution.flow.items():
        assert g.has_edge(u, v)
        assert solution.capacity(cables, u, v) >= load
    assert solution.cost <= 3.0 * solution.tree_cost * (1 + 1e-9)

    installed = nx.Graph()
    installed.add_nodes_from(range(g.n))
    installed.add_edges_from(solution.flow)
    for dem in demands:
        assert nx.has_path(installed, dem.source, dem.target)


def test_bab_is_feasible_and_within_three_times_tree_cost(small_graphs):
    rng = np.random.default_rng(3)
    cables = [Cable(1.0, 1.0), Cable(4.0, 2.5), Cable(16.0, 7.0)]
    for seed, g in enumerate(small_graphs[:3]):
        demands = [
            Demand(int(s), int(t), float(rng.integers(1, 9)))
            for s, t in rng.integers(0, g.n, size=(6, 2))
        ]
        solution = buy_at_bulk(g, demands, cables, EmbedConfig(seed=seed))
        assert isinstance(solution, BabSolution)
        _check_bab_solution(g, demands, cables, solution)


@pytest.mark.slow
def test_bab_feasibility_on_many_instances():
    rng = np.random.default_rng(31)
    for seed in range(200):
        g = make_graph(4 + seed % 12, seed, extra=seed % 4)
        cables = [Cable(float(2**i), float(rng.integers(1, 4) * (i + 1))) for i in range(int(rng.integers(1, 4)))]
        demands = [
            Demand(int(s), int(t), float(rng.integers(1, 20)))
            for s, t in rng.integers(0, g.n, size=(int(rng.integers(1, 8)), 2))
        ]
        solution = buy_at_bulk(g, demands, cables, EmbedConfig(seed=seed))
        _check_bab_solution(g, demands, cables, solution)


def test_route_on_tree_loads_both_sides():
    g = make_graph(10, seed=1)
    _, t = sample_tree(g, EmbedConfig(seed=1))
    load = route_on_tree(t, [Demand(0, 0, 5.0), Demand(2, 7, 1.5)])
    assert all(value == 1.5 for value in load.values())
    assert t.leaf_of[2] in load and t.leaf_of[7] in load
    assert t.root not in load


def test_bab_rejects_invalid_instances(path3):
    with pytest.raises(InvalidParameterError):
        buy_at_bulk(path3, [Demand(0, 1, 1.0)], [], EmbedConfig())
    with pytest.raises(InvalidParameterError):
        buy_at_bulk(path3, [Demand(0, 5, 1.0)], [Cable(1.0, 1.0)], EmbedConfig())
    with pytest.raises(InvalidParameterError):
        buy_at_bulk(path3, [Demand(0, 1, 0.0)], [Cable(1.0, 1.0)], EmbedConfig())


def test_load_bab_instance(tmp_path):
    target = tmp_path / "bab.json"
    target.write_text(json.dumps({"demands": [[0, 2, 1.5]], "cables": [[1, 1], [8, 3]]}), encoding="utf-8")
    demands, cables = load_bab_instance(target)
    assert demands == [Demand(0, 2, 1.5)]
    assert cables == [Cable(1.0, 1.0), Cable(8.0, 3.0)]

    bad = tmp_path / "bad.json"
    bad.write_text('{"demands": [[0, 1]]}', encoding="utf-8")
    with pytest.raises(GraphParseError):
        load_bab_instance(bad)
    with pytest.raises(GraphParseError):
        load_bab_instance(tmp_path / "missing.json")
