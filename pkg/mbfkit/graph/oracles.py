"""精确参考实现（测试用的“标准答案”）。

这些函数直接在 G 上计算，不经过 MBF 框架：
- dijkstra / hop_limited_distances: 精确距离与 h 跳距离
- shortest_path_diameter / min_hop_shortest_path: 最短路中的最少跳数
- widest_distances: max-min 宽度
- reachable_within: h 跳内可达（BFS）
- enumerate_paths: 穷举无环路径（只允许小图）
"""

from __future__ import annotations

import heapq
import math
from typing import Optional, Sequence

import networkx as nx

from ..algebra import DistanceMap, PathSet, WidestMap
from ..errors import CapExceededError, DisconnectedGraphError, GraphInvariantError, InvalidParameterError
from .model import WeightedGraph

INF = math.inf

ENUMERATE_MAX_NODES = 10
ENUMERATE_MAX_HOPS = 6


def _check_node(g: WeightedGraph, s: int) -> None:
    if not 0 <= s < g.n:
        raise InvalidParameterError(f"node {s} out of range for n={g.n}")


def dijkstra(g: WeightedGraph, s: int) -> DistanceMap:
    """dist(s, ·, G)；不可达节点不出现在结果里。"""
    _check_node(g, s)
    lengths = nx.single_source_dijkstra_path_length(g.nx_graph, s, weight="weight")
    return DistanceMap(lengths)


def all_pairs_dijkstra(g: WeightedGraph) -> list[DistanceMap]:
    return [dijkstra(g, s) for s in range(g.n)]


def hop_limited_distances(g: WeightedGraph, s: int, h: int) -> DistanceMap:
    """dist^h(s, ·, G)：h 轮 Bellman-Ford 松弛。"""
    _check_node(g, s)
    if h < 0:
        raise InvalidParameterError(f"hop count must be >= 0, got {h}")
    dist = {s: 0.0}
    for _ in range(min(h, g.n - 1)):
        nxt = dict(dist)
        for v, dv in dist.items():
            for w, weight in g.neighbors(v):
                cand = dv + weight
                if cand < nxt.get(w, INF):
                    nxt[w] = cand
        if nxt == dist:
            break
        dist = nxt
    return DistanceMap(dist)


def _hop_dijkstra(g: WeightedGraph, s: int) -> tuple[dict[int, float], dict[int, int], dict[int, int]]:
    """按 (距离, 跳数, 节点) 字典序的 Dijkstra，返回距离、最少跳数和前驱。"""
    dist: dict[int, float] = {s: 0.0}
    hops: dict[int, int] = {s: 0}
    parent: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple[float, int, int]] = [(0.0, 0, s)]
    while heap:
        d, k, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for w, weight in g.neighbors(v):
            if w in done:
                continue
            cand = (d + weight, k + 1)
            if cand < (dist.get(w, INF), hops.get(w, g.n)):
                dist[w], hops[w] = cand
                parent[w] = v
                heapq.heappush(heap, (cand[0], cand[1], w))
    return dist, hops, parent


def shortest_path_diameter(g: WeightedGraph) -> int:
    """SPD(G) = max_{v,w} hop(v, w, G)。图必须连通。"""
    best = 0
    for s in range(g.n):
        dist, hops, _ = _hop_dijkstra(g, s)
        if len(dist) < g.n:
            raise DisconnectedGraphError("shortest path diameter needs a connected graph")
        best = max(best, max(hops.values()))
    return best


def min_hop_parents(g: WeightedGraph, s: int) -> dict[int, int]:
    """以 s 为根的最少跳最短路树（前驱表）。"""
    _check_node(g, s)
    return _hop_dijkstra(g, s)[2]


def walk_parents(parent: dict[int, int], s: int, t: int) -> Optional[list[int]]:
    """沿前驱表从 t 走回 s；不可达返回 None。"""
    if t != s and t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def min_hop_shortest_path(g: WeightedGraph, s: int, t: int) -> Optional[list[int]]:
    """s 到 t 的最短路中跳数最少的一条；不可达返回 None。"""
    _check_node(g, t)
    return walk_parents(min_hop_parents(g, s), s, t)


def widest_distances(g: WeightedGraph, s: int, h: Optional[int] = None) -> WidestMap:
    """width^h(s, ·, G)：h 轮 max-min 松弛（h=None 时不限跳数）。"""
    _check_node(g, s)
    rounds = g.n - 1 if h is None else min(h, g.n - 1)
    width = {s: INF}
    for _ in range(rounds):
        nxt = dict(width)
        for v, wv in width.items():
            for w, cap in g.neighbors(v):
                cand = min(wv, cap)
                if cand > nxt.get(w, 0.0):
                    nxt[w] = cand
        if nxt == width:
            break
        width = nxt
    return WidestMap(width)


def reachable_within(g: WeightedGraph, s: int, h: Optional[int] = None) -> frozenset[int]:
    """h 跳内可达的节点集合（BFS）。"""
    _check_node(g, s)
    return frozenset(nx.single_source_shortest_path_length(g.nx_graph, s, cutoff=h))


def enumerate_paths(g: WeightedGraph, v: int, h: int) -> PathSet:
    """从 v 出发、至多 h 跳的全部无环路径及其权重。"""
    _check_node(g, v)
    if g.n > ENUMERATE_MAX_NODES:
        raise CapExceededError("path enumeration nodes", g.n, ENUMERATE_MAX_NODES)
    if h > ENUMERATE_MAX_HOPS:
        raise CapExceededError("path enumeration hops", h, ENUMERATE_MAX_HOPS)

    found: dict[tuple[int, ...], float] = {}

    def walk(path: tuple[int, ...], weight: float) -> None:
        found[path] = weight
        if len(path) - 1 >= h:
            return
        for w, ew in g.neighbors(path[-1]):
            if w not in path:
                walk(path + (w,), weight + ew)

    walk((v,), 0.0)
    return PathSet(found)


def path_weight(g: WeightedGraph, path: Sequence[int]) -> float:
    """从左到右累加路径权重；相邻节点不相连时报错。"""
    total = 0.0
    for a, b in zip(path, path[1:]):
        w = g.weight(a, b)
        if w == INF:
            raise GraphInvariantError(f"({a}, {b}) is not an edge")
        total += w
    return total
