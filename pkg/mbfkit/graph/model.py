"""带权无向图。

WeightedGraph 构造后不可变：
- 邻接表按邻居 id 排序
- 无自环、无重边、权重严格为正
构造入口是 WeightedGraph.from_edges，负责全部校验。
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

from ..errors import DisconnectedGraphError, GraphInvariantError

logger = logging.getLogger(__name__)

Edge = tuple[int, int, float]
Adjacency = tuple[tuple[tuple[int, float], ...], ...]


@dataclass(frozen=True)
class WeightedGraph:
    """G = (V, E, ω)，V = {0, ..., n-1}。"""

    n: int
    adjacency: Adjacency

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[float]], *, strict: bool = False) -> "WeightedGraph":
        """从 (u, v, w) 列表构造。

        重边保留最小权重并告警；strict=True 时直接报错。
        """
        if n < 1:
            raise GraphInvariantError(f"node count must be >= 1, got {n}")
        best: dict[tuple[int, int], float] = {}
        duplicates = 0
        for raw in edges:
            u, v, w = int(raw[0]), int(raw[1]), float(raw[2])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInvariantError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInvariantError(f"self-loop at node {u}")
            if not (w > 0) or math.isinf(w):
                raise GraphInvariantError(f"edge ({u}, {v}) has invalid weight {w}")
            key = (u, v) if u < v else (v, u)
            old = best.get(key)
            if old is not None:
                if strict:
                    raise GraphInvariantError(f"duplicate edge {key}")
                duplicates += 1
                if w < old:
                    best[key] = w
            else:
                best[key] = w
        if duplicates:
            logger.warning("[graph] 合并了 %s 条重边（保留最小权重）", duplicates)

        lists: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for (u, v), w in best.items():
            lists[u].append((v, w))
            lists[v].append((u, w))
        return cls(n=n, adjacency=tuple(tuple(sorted(nbrs)) for nbrs in lists))

    # ---- 查询 ----

    def neighbors(self, v: int) -> tuple[tuple[int, float], ...]:
        return self.adjacency[v]

    @property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> Iterator[Edge]:
        """每条边一次，u < v，按 (u, v) 排序。"""
        for u, nbrs in enumerate(self.adjacency):
            for v, w in nbrs:
                if u < v:
                    yield (u, v, w)

    @cached_property
    def _weights(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for u, nbrs in enumerate(self.adjacency) for v, w in nbrs}

    def weight(self, u: int, v: int) -> float:
        """边权；非边返回 ∞。"""
        return self._weights.get((u, v), math.inf)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx 视图（只读使用）。"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_weighted_edges_from(self.edges())
        return graph

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


def weight_range(g: WeightedGraph) -> tuple[float, float]:
    """(ω_min, ω_max)；无边图按单位尺度返回 (1.0, 1.0)。"""
    weights = [w for _, _, w in g.edges()]
    if not weights:
        return (1.0, 1.0)
    return (min(weights), max(weights))


def check_weight_ratio(g: WeightedGraph, exponent: float) -> bool:
    """ω_max / ω_min ≤ n^c 时返回 True，否则告警并返回 False。"""
    w_min, w_max = weight_range(g)
    limit = max(g.n, 2) ** exponent
    if w_max / w_min > limit:
        logger.warning(
            "[graph] 权重比 %.3g 超过 n^%s = %.3g，树深度会变大", w_max / w_min, exponent, limit
        )
        return False
    return True


def is_connected(g: WeightedGraph) -> bool:
    return nx.is_connected(g.nx_graph)


def require_connected(g: WeightedGraph) -> None:
    """嵌入类流程要求图连通。"""
    if not is_connected(g):
        parts = nx.number_connected_components(g.nx_graph)
        raise DisconnectedGraphError(f"graph has {parts} connected components")
