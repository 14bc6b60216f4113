from __future__ import annotations

import pytest

from conftest import make_graph
from mbfkit.errors import CapExceededError, GraphInvariantError, InvalidParameterError
from mbfkit.graph import WeightedGraph, dijkstra, path_weight
from mbfkit.hopset import (
    HopsetConfig,
    augment,
    default_d,
    expand_edge,
    expand_walk,
    identity_hopset,
    resolve_hopset,
    verify_hopset,
)


def test_default_d():
    assert default_d(1) == 1
    assert default_d(2) == 1
    assert default_d(10) == 9
    # 4·⌈log₂ 1024⌉² = 400
    assert default_d(1024) == 400


def test_config_validation_and_alias():
    assert HopsetConfig(strategy="cluster-shortcut").strategy == "shortcut"
    with pytest.raises(InvalidParameterError):
        HopsetConfig(strategy="spanner")
    with pytest.raises(InvalidParameterError):
        HopsetConfig(d=0)
    with pytest.raises(InvalidParameterError):
        HopsetConfig(eps_hat=-0.1)


def test_identity_with_full_hop_bound_is_exact():
    g = make_graph(20, seed=2)
    resolved = resolve_hopset(g, HopsetConfig(d=g.n - 1))
    assert not resolved.fallback
    assert resolved.aug.graph is g
    assert resolved.eps_hat == 0.0
    assert resolved.report.passed


def test_failed_verification_falls_back_to_identity(path3):
    resolved = resolve_hopset(path3, HopsetConfig(d=1))
    assert resolved.fallback
    assert resolved.d == 2
    assert resolved.aug.extra_edges == 0
    assert not resolved.report.passed
    assert resolved.report.violating_pair == (0, 2)


@pytest.mark.parametrize("seed", range(6))
def test_shortcuts_preserve_distances_and_expand_to_g_paths(seed):
    g = make_graph(20 + 5 * seed, seed=5 + seed, extra=5)
    aug = augment(g, HopsetConfig(strategy="shortcut", d=4, seed=3 + seed))
    assert aug.extra_edges > 0
    for s in range(g.n):
        assert dijkstra(aug.graph, s) == dijkstra(g, s)
    for (u, v), path in aug.shortcuts.items():
        assert path[0] == u and path[-1] == v
        assert path_weight(g, path) == aug.graph.weight(u, v)
        assert expand_edge(aug, v, u) == list(reversed(path))


def test_shortcut_hopset_report_is_measured():
    g = make_graph(30, seed=5, extra=5)
    cfg = HopsetConfig(strategy="shortcut", d=4, eps_hat=10.0, seed=3)
    resolved = resolve_hopset(g, cfg)
    report = verify_hopset(resolved.aug, resolved.d, 10.0)
    if resolved.fallback:
        assert resolved.d == g.n - 1
    else:
        assert resolved.eps_hat == pytest.approx(report.measured_eps_hat)
        assert report.max_ratio <= 11.0


def test_unverifiable_identity_uses_full_hop_bound():
    g = make_graph(12, seed=1)
    resolved = resolve_hopset(g, HopsetConfig(d=2), verify_cap=4)
    assert resolved.report is None
    assert resolved.d == g.n - 1


def test_verify_cap():
    g = make_graph(12, seed=1)
    with pytest.raises(CapExceededError):
        verify_hopset(identity_hopset(g), 11, 0.0, cap=8)


def test_expand_walk_rejects_non_edges(path3):
    aug = identity_hopset(path3)
    assert expand_walk(aug, [0, 1, 2, 1]) == [0, 1, 2, 1]
    assert expand_walk(aug, []) == []
    with pytest.raises(GraphInvariantError):
        expand_walk(aug, [0, 2])


def test_shortcut_on_tiny_graph_is_identity():
    g = WeightedGraph.from_edges(2, [(0, 1, 1.0)])
    aug = augment(g, HopsetConfig(strategy="shortcut"))
    assert aug.graph is g
