from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import pytest

from conftest import make_graph
from mbfkit.algebra import DistanceMap, PathSet
from mbfkit.engine import (
    AdjacencyOperator,
    MbfAlgorithm,
    apsp,
    apwp,
    connectivity,
    fire,
    hop_apsp,
    kdsdp,
    ksdp,
    kssp,
    mbf_run,
    mssp,
    slf_apply_traced,
    source_detection,
    source_detection_filter,
    sssp,
    sswp,
)
from mbfkit.errors import CapExceededError, InvalidParameterError
from mbfkit.frt import le_algorithm, sample_order
from mbfkit.graph import (
    WeightedGraph,
    dijkstra,
    enumerate_paths,
    hop_limited_distances,
    reachable_within,
    shortest_path_diameter,
    widest_distances,
)

INF = math.inf


def test_sssp_matches_dijkstra(small_graphs):
    for g in small_graphs:
        run = mbf_run(sssp(g.n, 0), AdjacencyOperator(g))
        assert run.converged
        exact = dijkstra(g, 0)
        assert all(run.state[v] == DistanceMap({0: exact[v]}) for v in range(g.n))


def test_apsp_matches_dijkstra(small_graphs):
    for g in small_graphs:
        run = mbf_run(apsp(g.n), AdjacencyOperator(g))
        assert run.converged
        assert list(run.state) == [dijkstra(g, v) for v in range(g.n)]


def test_hop_apsp_matches_bellman_ford():
    g = make_graph(16, seed=4)
    for h in (0, 1, 2, 5):
        run = mbf_run(hop_apsp(g.n, h), AdjacencyOperator(g))
        assert list(run.state) == [hop_limited_distances(g, v, h) for v in range(g.n)]


def test_stretch_scales_every_edge(triangle):
    run = mbf_run(apsp(3), AdjacencyOperator(triangle, stretch=2.0))
    assert run.state[0] == DistanceMap({0: 0.0, 1: 2.0, 2: 4.0})


def test_kssp_keeps_k_nearest_by_distance_then_id(path3):
    run = mbf_run(kssp(3, 2), AdjacencyOperator(path3))
    assert run.state[0] == DistanceMap({0: 0.0, 1: 1.0})
    assert run.state[1] == DistanceMap({0: 1.0, 1: 0.0})
    assert run.state[2] == DistanceMap({1: 2.0, 2: 0.0})


def test_mssp_and_source_detection(small_graphs):
    g = small_graphs[2]
    S = {0, 5, 9}
    run = mbf_run(mssp(g.n, S), AdjacencyOperator(g))
    for v in range(g.n):
        assert run.state[v] == DistanceMap({s: dijkstra(g, s)[v] for s in S})

    run = mbf_run(source_detection(g.n, S, d=20.0, k=1), AdjacencyOperator(g))
    for v in range(g.n):
        full = DistanceMap({s: dijkstra(g, s)[v] for s in S})
        assert run.state[v] == source_detection_filter(full, S, 20.0, 1)


PLACEMENT_INSTANCES = ["source-detection", "apsp", "kssp", "ksdp", "ksdp-k1", "kdsdp", "le-lists"]


def _placement_case(name: str, seed: int) -> tuple[WeightedGraph, MbfAlgorithm]:
    h = 1 + seed % 6
    if name in ("ksdp", "ksdp-k1", "kdsdp"):
        n = 5 + seed % 4
        g = make_graph(n, seed, extra=3)
    else:
        n = 8 + seed % 25
        g = make_graph(n, seed)
    if name == "source-detection":
        alg = source_detection(n, {0, 1, 2, 3}, d=25.0, k=2, h=h)
    elif name == "apsp":
        alg = apsp(n).with_h(h)
    elif name == "kssp":
        alg = kssp(n, 3, h=h)
    elif name == "ksdp":
        alg = ksdp(n, 0, 3, h=h)
    elif name == "ksdp-k1":
        alg = ksdp(n, 0, 1, h=h)
    elif name == "kdsdp":
        alg = kdsdp(n, 0, 2, h=h)
    else:
        alg = le_algorithm(n, sample_order(n, seed)).with_h(h)
    return g, alg


@pytest.mark.parametrize("seed", range(100))
@pytest.mark.parametrize("name", PLACEMENT_INSTANCES)
def test_filter_placement_does_not_change_result(name, seed):
    g, alg = _placement_case(name, seed)
    every = mbf_run(alg, AdjacencyOperator(g), filter_every_step=True)
    last = mbf_run(alg, AdjacencyOperator(g), filter_every_step=False)
    assert every.state == last.state


def test_fire_marks_nodes_within_distance(path3):
    run = mbf_run(fire(3, {0}, d=1.5), AdjacencyOperator(path3))
    assert [bool(x) for x in run.state] == [True, True, False]


def test_widest_paths_match_oracle(small_graphs):
    for g in small_graphs[:3]:
        run = mbf_run(sswp(g.n, 0), AdjacencyOperator(g))
        exact = widest_distances(g, 0)
        assert all(run.state[v][0] == exact[v] for v in range(g.n))
        every = mbf_run(apwp(g.n), AdjacencyOperator(g))
        assert every.state[3][0] == exact[3]


def test_connectivity_matches_bfs():
    g = WeightedGraph.from_edges(6, [(0, 1, 1.0), (1, 2, 5.0), (3, 4, 2.0)])
    run = mbf_run(connectivity(6), AdjacencyOperator(g))
    for v in range(6):
        assert run.state[v] == reachable_within(g, v)
    one_hop = mbf_run(connectivity(6, h=1), AdjacencyOperator(g))
    assert one_hop.state[0] == frozenset({0, 1})


def test_ksdp_on_triangle(triangle):
    run = mbf_run(ksdp(3, 0, 2), AdjacencyOperator(triangle))
    assert run.state[0] == PathSet({(0,): 0.0})
    assert run.state[1] == PathSet({(1, 0): 1.0, (1, 2, 0): 4.0})
    assert run.state[2] == PathSet({(2, 0): 3.0, (2, 1, 0): 2.0})


def test_ksdp_with_large_k_matches_enumeration():
    for seed, n in enumerate((5, 7, 8)):
        g = make_graph(n, seed, extra=4)
        h = 3
        run = mbf_run(ksdp(n, 0, 10_000, h=h), AdjacencyOperator(g))
        everything = enumerate_paths(g, 0, h)
        for v in range(n):
            expected = PathSet({tuple(reversed(p)): w for p, w in everything.items() if p[-1] == v})
            assert run.state[v] == expected


def test_ksdp_k1_is_shortest_path(small_graphs):
    g = small_graphs[0]
    run = mbf_run(ksdp(g.n, 0, 1), AdjacencyOperator(g))
    exact = dijkstra(g, 0)
    for v in range(g.n):
        (weight,) = run.state[v].values()
        assert weight == exact[v]


def test_kdsdp_keeps_distinct_weights():
    # 0 到 3 的两条路权重都为 2
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 3, 1.0), (0, 2, 1.0), (2, 3, 1.0), (0, 3, 5.0)])
    run = mbf_run(kdsdp(4, 0, 2), AdjacencyOperator(g))
    assert sorted(run.state[3].values()) == [2.0, 5.0]
    plain = mbf_run(ksdp(4, 0, 2), AdjacencyOperator(g))
    assert sorted(plain.state[3].values()) == [2.0, 2.0]


def test_ksdp_finds_paths_whose_tails_are_evicted_at_neighbors():
    # 1 的第二短路 (1,2,3,4,0) 的尾段 (2,3,4,0) 不在 2 的前两名里：
    # 2 的前两名 (2,1,0)、(2,3,1,0) 都经过 1
    g = WeightedGraph.from_edges(
        5, [(1, 0, 1.0), (2, 1, 1.0), (2, 3, 1.0), (3, 1, 3.0), (3, 4, 2.0), (4, 0, 3.0)]
    )
    expected = PathSet({(1, 0): 1.0, (1, 2, 3, 4, 0): 7.0})
    for every_step in (True, False):
        run = mbf_run(ksdp(5, 0, 2), AdjacencyOperator(g), filter_every_step=every_step)
        assert run.converged
        assert run.state[1] == expected
        assert run.state[2] == PathSet({(2, 1, 0): 2.0, (2, 3, 1, 0): 5.0})
    assert mbf_run(kdsdp(5, 0, 2), AdjacencyOperator(g)).state[1] == expected


def _sorted_paths_to_source(g: WeightedGraph, h: int) -> list[list[tuple[float, tuple[int, ...]]]]:
    """每个 v 到 0 的至多 h 跳无环路径，按 (权重, 路径) 升序。"""
    per_node: list[list[tuple[float, tuple[int, ...]]]] = [[] for _ in range(g.n)]
    for path, weight in enumerate_paths(g, 0, h).items():
        per_node[path[-1]].append((weight, tuple(reversed(path))))
    return [sorted(entries) for entries in per_node]


def _first_per_weight(entries: list[tuple[float, tuple[int, ...]]], k: int) -> list[tuple[float, tuple[int, ...]]]:
    chosen: list[tuple[float, tuple[int, ...]]] = []
    for weight, path in entries:
        if chosen and chosen[-1][0] == weight:
            continue
        if len(chosen) == k:
            break
        chosen.append((weight, path))
    return chosen


@pytest.mark.parametrize("seed", range(30))
def test_ksdp_and_kdsdp_match_enumeration(seed):
    n = 4 + seed % 5
    h = 1 + seed % 5
    g = make_graph(n, seed, extra=4)
    reference = _sorted_paths_to_source(g, h)
    for k in (1, 2, 3):
        plain = mbf_run(ksdp(n, 0, k, h=h), AdjacencyOperator(g))
        distinct = mbf_run(kdsdp(n, 0, k, h=h), AdjacencyOperator(g))
        for v in range(n):
            assert plain.state[v] == PathSet({p: w for w, p in reference[v][:k]})
            assert distinct.state[v] == PathSet({p: w for w, p in _first_per_weight(reference[v], k)})


@pytest.mark.parametrize("seed", range(20))
def test_kssp_matches_sorted_dijkstra(seed):
    n = 10 + seed
    g = make_graph(n, seed)
    for k in (1, 2, 3, 5):
        run = mbf_run(kssp(n, k), AdjacencyOperator(g))
        assert run.converged
        for v in range(n):
            nearest = sorted((d, w) for w, d in dijkstra(g, v).items())[:k]
            assert run.state[v] == DistanceMap({w: d for d, w in nearest})


@pytest.mark.parametrize("seed", range(20))
def test_apsp_reaches_fixpoint_after_spd_rounds(seed):
    g = make_graph(8 + seed, seed, extra=seed % 7)
    run = mbf_run(apsp(g.n), AdjacencyOperator(g))
    assert run.converged
    assert run.iterations == shortest_path_diameter(g)


def test_path_cap_is_enforced(triangle):
    with pytest.raises(CapExceededError):
        mbf_run(ksdp(3, 0, 2, path_cap=1), AdjacencyOperator(triangle))


def test_invalid_parameters():
    with pytest.raises(InvalidParameterError):
        sssp(3, 3)
    with pytest.raises(InvalidParameterError):
        kssp(3, -1)
    with pytest.raises(InvalidParameterError):
        hop_apsp(3, -1)
    with pytest.raises(InvalidParameterError):
        source_detection(0, set())


def test_fixpoint_cap_reports_non_convergence():
    g = make_graph(12, seed=1, extra=0)
    run = mbf_run(apsp(g.n), AdjacencyOperator(g), fixpoint_cap=1)
    assert not run.converged
    assert run.iterations == 1


def test_executor_gives_identical_results(small_graphs):
    g = small_graphs[3]
    alg = kssp(g.n, 3)
    serial = mbf_run(alg, AdjacencyOperator(g))
    with ThreadPoolExecutor(max_workers=4) as pool:
        parallel = mbf_run(alg, AdjacencyOperator(g), executor=pool)
    assert serial.state == parallel.state
    assert serial.iterations == parallel.iterations


def test_traced_apply_records_parents(path3):
    x = (DistanceMap({0: 0.0}), DistanceMap(), DistanceMap())
    y, parents = slf_apply_traced(AdjacencyOperator(path3), x)
    assert y[1] == DistanceMap({0: 1.0})
    assert parents[1] == {0: 0}
    assert parents[0] == {0: 0}
    assert parents[2] == {}
