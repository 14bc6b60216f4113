from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import pytest

from conftest import make_graph
from mbfkit.engine import AdjacencyOperator, apsp, connectivity, mbf_run, sssp
from mbfkit.errors import InvalidParameterError, MissingTraceError, NonConvergenceError
from mbfkit.graph import WeightedGraph, dijkstra, path_weight, shortest_path_diameter
from mbfkit.hopset import HopsetConfig, identity_hopset, resolve_hopset
from mbfkit.simgraph import (
    LevelAssignment,
    SimulatedGraphH,
    check_level_monotonicity,
    default_eps_hat,
    h_edge_weight,
    iteration_cap,
    materialize_h,
    oracle_run,
    sample_levels,
    trace_h_path,
)


def _h(g: WeightedGraph, seed: int = 0, eps_hat: float = 1.0, d: int | None = None) -> SimulatedGraphH:
    return SimulatedGraphH(
        aug=identity_hopset(g),
        levels=sample_levels(g.n, seed),
        d=d if d is not None else max(g.n - 1, 1),
        eps_hat=eps_hat,
    )


def test_levels_are_deterministic_and_geometric():
    a = sample_levels(500, seed=4)
    assert a == sample_levels(500, seed=4)
    assert a != sample_levels(500, seed=4, sample=1)
    assert min(a.level) == 0
    # 约一半节点停在第 0 层
    assert 150 < a.level.count(0) < 350
    assert a.nodes_at_least(0) == frozenset(range(500))
    assert a.nodes_at_least(a.Lambda + 1) == frozenset()


def test_default_eps_hat_and_iteration_cap():
    assert default_eps_hat(2) == 1.0
    assert default_eps_hat(16) == 1.0 / 16
    assert iteration_cap(1) == 1
    assert iteration_cap(16, 2) == 32


def test_materialized_weights_match_definition():
    g = make_graph(10, seed=3)
    H = _h(g, seed=1)
    Hg = materialize_h(H)
    for v in range(g.n):
        for w in range(v + 1, g.n):
            assert Hg.weight(v, w) == pytest.approx(h_edge_weight(H, v, w))
            stretch = 2.0 ** (H.Lambda - H.levels.edge_level(v, w))
            assert Hg.weight(v, w) == pytest.approx(stretch * dijkstra(g, v)[w])


@pytest.mark.parametrize("strategy", ["identity", "shortcut"])
def test_oracle_matches_materialized_h(small_graphs, strategy):
    for seed, g in enumerate(small_graphs[:3]):
        resolved = resolve_hopset(g, HopsetConfig(strategy=strategy, d=4, eps_hat=1.0, seed=seed))
        H = SimulatedGraphH(aug=resolved.aug, levels=sample_levels(g.n, seed), d=resolved.d, eps_hat=1.0)
        exact = mbf_run(apsp(g.n), AdjacencyOperator(materialize_h(H)))
        run = oracle_run(H, apsp(g.n))
        for v in range(g.n):
            assert run.state[v].keys() == exact.state[v].keys()
            for w, value in exact.state[v].items():
                assert run.state[v][w] == pytest.approx(value)


def test_h_distances_are_sandwiched(small_graphs):
    g = small_graphs[1]
    H = _h(g, seed=7, eps_hat=0.25)
    run = oracle_run(H, apsp(g.n))
    factor = H.sandwich_factor()
    for v in range(g.n):
        exact = dijkstra(g, v)
        for w in range(g.n):
            assert exact[w] * (1 - 1e-12) <= run.state[v][w] <= factor * exact[w] * (1 + 1e-12)


def test_oracle_with_executor_is_identical(small_graphs):
    g = small_graphs[2]
    H = _h(g, seed=2, eps_hat=0.5)
    serial = oracle_run(H, sssp(g.n, 0))
    with ThreadPoolExecutor(max_workers=3) as pool:
        parallel = oracle_run(H, sssp(g.n, 0), executor=pool)
    assert serial.state == parallel.state
    assert serial.iterations == parallel.iterations


def test_trace_reconstructs_walks_in_g(small_graphs):
    g = small_graphs[1]
    H = _h(g, seed=5, eps_hat=0.5, d=3)
    run = oracle_run(H, apsp(g.n), record_trace=True)
    assert run.trace is not None
    for v in range(g.n):
        for t, value in run.state[v].items():
            walk = trace_h_path(run.trace, v, t)
            assert walk[0] == v and walk[-1] == t
            # 游走权重不超过 H 距离（层级惩罚 ≥ 1）
            assert path_weight(g, walk) <= value * (1 + 1e-12)


def test_trace_errors(path3):
    with pytest.raises(MissingTraceError):
        trace_h_path(None, 0, 1)
    H = _h(path3)
    run = oracle_run(H, sssp(3, 0), record_trace=True)
    with pytest.raises(MissingTraceError):
        trace_h_path(run.trace, 1, 2)


def test_non_convergence_carries_partial_state():
    # d = 1 时 H 就是带惩罚的路径图，需要 n-1 轮
    n = 40
    g = WeightedGraph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)])
    H = _h(g, seed=0, d=1)
    with pytest.raises(NonConvergenceError) as info:
        oracle_run(H, apsp(n), cap_const=1)
    assert info.value.exit_code == 3
    assert len(info.value.partial_state) == n


def test_oracle_rejects_non_distance_algorithms(path3):
    with pytest.raises(InvalidParameterError):
        oracle_run(_h(path3), connectivity(3))
    with pytest.raises(InvalidParameterError):
        oracle_run(_h(path3), apsp(4))


def test_level_monotonicity_counts_low_level_detours(path3):
    levels = LevelAssignment(level=(1, 0, 1))
    # 0 与 2 都在第 1 层，但唯一的路经过第 0 层的节点 1
    assert check_level_monotonicity(path3, levels) == 1
    assert check_level_monotonicity(path3, LevelAssignment(level=(0, 0, 0))) == 0


@pytest.mark.slow
def test_oracle_iterations_equal_shortest_path_diameter_of_h():
    g = make_graph(64, seed=8, extra=16)
    H = _h(g, seed=8)
    Hg = materialize_h(H)
    run = oracle_run(H, apsp(g.n))
    assert run.iterations == shortest_path_diameter(Hg)
    assert run.iterations < g.n - 1


@pytest.mark.parametrize("seed", range(10))
def test_level_fractions_halve_per_level(seed):
    levels = sample_levels(4096, seed)
    above = len(levels.nodes_at_least(1)) / 4096
    assert 0.45 <= above <= 0.55
    assert 0.2 <= len(levels.nodes_at_least(2)) / 4096 <= 0.3


@pytest.mark.parametrize("seed", range(12))
def test_materialized_h_has_short_monotone_shortest_paths(seed):
    g = make_graph(16 + 4 * seed, seed, extra=seed % 5)
    H = _h(g, seed=seed)
    Hg = materialize_h(H)
    bound = 4 * (2 * H.Lambda + 1) * math.ceil(math.log2(g.n))
    assert shortest_path_diameter(Hg) <= bound
    assert check_level_monotonicity(Hg, H.levels) == 0
