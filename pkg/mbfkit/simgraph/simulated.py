"""模拟图 H。

H 是 V 上的完全图，边 {v, w} 的权重
    w_Λ({v, w}) = (1+ε̂)^{Λ - level(v, w)} · dist^d(v, w, G′)
H 从不稠密存储；materialize_h 只给测试用，规模有上限。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from ..errors import CapExceededError, InvalidParameterError
from ..graph import WeightedGraph, hop_limited_distances, min_hop_parents, walk_parents
from ..hopset import AugmentedGraph
from .levels import LevelAssignment

logger = logging.getLogger(__name__)

INF = math.inf


def default_eps_hat(n: int) -> float:
    """1/⌈log₂ n⌉²；n ≤ 2 时取 1.0。"""
    if n <= 2:
        return 1.0
    return 1.0 / math.ceil(math.log2(n)) ** 2


@dataclass(frozen=True)
class SimulatedGraphH:
    aug: AugmentedGraph
    levels: LevelAssignment
    d: int
    eps_hat: float

    def __post_init__(self) -> None:
        if self.levels.n != self.aug.n:
            raise InvalidParameterError(f"levels cover {self.levels.n} nodes, graph has {self.aug.n}")
        if self.d < 1:
            raise InvalidParameterError(f"hop bound d must be >= 1, got {self.d}")
        if self.eps_hat < 0:
            raise InvalidParameterError(f"eps_hat must be >= 0, got {self.eps_hat}")

    @property
    def n(self) -> int:
        return self.aug.n

    @property
    def graph(self) -> WeightedGraph:
        """G′。"""
        return self.aug.graph

    @property
    def Lambda(self) -> int:
        return self.levels.Lambda

    def sandwich_factor(self) -> float:
        """(1+ε̂)^{Λ+1}：dist_H / dist_{G′,d} 的上界系数。"""
        return (1.0 + self.eps_hat) ** (self.Lambda + 1)


def level_stretch(H: SimulatedGraphH, lam: int) -> float:
    """层 λ 的惩罚系数 (1+ε̂)^{Λ-λ}。"""
    return (1.0 + H.eps_hat) ** (H.Lambda - lam)


def h_edge_weight(H: SimulatedGraphH, v: int, w: int) -> float:
    """H 的边权（走精确 d 跳距离，测试用）。"""
    if v == w:
        raise InvalidParameterError("H has no self-loops")
    dist = hop_limited_distances(H.graph, v, H.d)[w]
    if dist == INF:
        return INF
    return level_stretch(H, H.levels.edge_level(v, w)) * dist


def materialize_h(H: SimulatedGraphH, cap: int = 256) -> WeightedGraph:
    """显式构造 H（完全图，d 跳不可达的对不连边）。"""
    if H.n > cap:
        raise CapExceededError("materialized H nodes", H.n, cap)
    edges = []
    for v in range(H.n):
        hop = hop_limited_distances(H.graph, v, H.d)
        for w, dist in hop.items():
            if w <= v:
                continue
            edges.append((v, w, level_stretch(H, H.levels.edge_level(v, w)) * dist))
    logger.debug("[simgraph] materialized H: n=%s edges=%s", H.n, len(edges))
    return WeightedGraph.from_edges(H.n, edges, strict=True)


def check_level_monotonicity(Hg: WeightedGraph, levels: LevelAssignment) -> int:
    """统计最少跳最短路上出现层级低于 level(v, w) 的边的点对数。"""
    bad = 0
    for v in range(Hg.n):
        parent = min_hop_parents(Hg, v)
        for w in range(v + 1, Hg.n):
            path = walk_parents(parent, v, w)
            if path is None:
                continue
            floor = levels.edge_level(v, w)
            if any(levels.edge_level(a, b) < floor for a, b in zip(path, path[1:])):
                bad += 1
    return bad
