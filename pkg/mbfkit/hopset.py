"""(d, ε̂)-hop set：给 G 加捷径边得到 G′，并提供校验器。

两种策略：
- identity: 不加边，G′ = G（对 d = n-1 是合法的 (n-1, 0)-hop set）
- shortcut: 随机选 ⌈√n·ln n⌉ 个枢纽，从每个枢纽做 d/2 跳截断的最短路，
  为每个至少 2 跳可达的节点加一条捷径，权重等于对应 G 路径的权重

嵌入流程把实测的 (d, ε̂) 当作输入，而不是保证值；
校验失败时退回 identity，d = n-1。
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import CapExceededError, GraphInvariantError, InvalidParameterError
from .graph import WeightedGraph, dijkstra, hop_limited_distances, path_weight
from .rng import stream

logger = logging.getLogger(__name__)

INF = math.inf

STRATEGIES = ("identity", "shortcut")
# 命令行与配置里也接受完整写法
_ALIASES = {"cluster-shortcut": "shortcut"}


def default_d(n: int) -> int:
    """min(n-1, 4⌈log₂ n⌉²)，至少为 1。"""
    if n <= 2:
        return 1
    return max(1, min(n - 1, 4 * math.ceil(math.log2(n)) ** 2))


@dataclass(frozen=True)
class HopsetConfig:
    """hop set 参数；d=None 表示按 default_d 自动选择。"""

    strategy: str = "identity"
    d: Optional[int] = None
    eps_hat: float = 0.0
    seed: int = 0
    hub_factor: float = 1.0

    def __post_init__(self) -> None:
        strategy = _ALIASES.get(self.strategy, self.strategy)
        if strategy not in STRATEGIES:
            raise InvalidParameterError(f"unknown hop-set strategy {self.strategy!r}")
        object.__setattr__(self, "strategy", strategy)
        if self.d is not None and self.d < 1:
            raise InvalidParameterError(f"hop bound d must be >= 1, got {self.d}")
        if self.eps_hat < 0:
            raise InvalidParameterError(f"eps_hat must be >= 0, got {self.eps_hat}")
        if self.hub_factor <= 0:
            raise InvalidParameterError(f"hub_factor must be > 0, got {self.hub_factor}")

    def hop_bound(self, n: int) -> int:
        return self.d if self.d is not None else default_d(n)


@dataclass(frozen=True)
class AugmentedGraph:
    """G′ = G + 捷径边。shortcuts 以 (u, v)（u < v）为键，值为 u 到 v 的 G 路径。"""

    base: WeightedGraph
    graph: WeightedGraph
    shortcuts: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def extra_edges(self) -> int:
        return len(self.shortcuts)


def identity_hopset(g: WeightedGraph) -> AugmentedGraph:
    return AugmentedGraph(base=g, graph=g)


def _truncated_paths(g: WeightedGraph, hub: int, hops: int) -> dict[int, tuple[int, ...]]:
    """hub 出发、至多 hops 跳的最短路（逐轮松弛，保存整条路径）。"""
    dist: dict[int, float] = {hub: 0.0}
    paths: dict[int, tuple[int, ...]] = {hub: (hub,)}
    for _ in range(hops):
        nxt_dist = dict(dist)
        nxt_paths = dict(paths)
        for v, dv in dist.items():
            for w, weight in g.neighbors(v):
                cand = dv + weight
                if cand < nxt_dist.get(w, INF):
                    nxt_dist[w] = cand
                    nxt_paths[w] = paths[v] + (w,)
        if nxt_dist == dist:
            break
        dist, paths = nxt_dist, nxt_paths
    return paths


def augment(g: WeightedGraph, cfg: HopsetConfig, executor: Optional[Executor] = None) -> AugmentedGraph:
    """按配置构造 G′。"""
    if cfg.strategy == "identity" or g.n <= 2:
        return identity_hopset(g)

    n = g.n
    count = min(n, max(1, math.ceil(cfg.hub_factor * math.sqrt(n) * math.log(n))))
    rng = stream(cfg.seed, "hopset")
    hubs = sorted(int(h) for h in rng.choice(n, size=count, replace=False))
    radius = max(1, cfg.hop_bound(n) // 2)

    def reach(hub: int) -> dict[int, tuple[int, ...]]:
        return _truncated_paths(g, hub, radius)

    per_hub = list(executor.map(reach, hubs)) if executor is not None else [reach(h) for h in hubs]

    weights = {(u, v): w for u, v, w in g.edges()}
    shortcuts: dict[tuple[int, int], tuple[int, ...]] = {}
    for hub, paths in zip(hubs, per_hub):
        for target, path in sorted(paths.items()):
            if len(path) < 3:
                continue
            key = (hub, target) if hub < target else (target, hub)
            oriented = path if path[0] == key[0] else tuple(reversed(path))
            weight = path_weight(g, oriented)
            if weight < weights.get(key, INF):
                weights[key] = weight
                shortcuts[key] = oriented

    graph = WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in sorted(weights.items())], strict=True)
    logger.info("[hopset] shortcut: hubs=%s radius=%s extra_edges=%s", count, radius, len(shortcuts))
    return AugmentedGraph(base=g, graph=graph, shortcuts=shortcuts)


@dataclass(frozen=True)
class HopsetReport:
    """verify_hopset 的结果。max_ratio = max dist^d(G′)/dist(G)。"""

    d: int
    eps_hat: float
    max_ratio: float
    violating_pair: Optional[tuple[int, int]]

    @property
    def passed(self) -> bool:
        return self.violating_pair is None

    @property
    def measured_eps_hat(self) -> float:
        return max(0.0, self.max_ratio - 1.0)


def verify_hopset(aug: AugmentedGraph, d: int, eps_hat: float, cap: int = 512) -> HopsetReport:
    """逐对比较 d 跳距离与精确距离，判定 (d, ε̂) 是否成立。"""
    n = aug.n
    if n > cap:
        raise CapExceededError("hop-set verification nodes", n, cap)
    if d < 1:
        raise InvalidParameterError(f"hop bound d must be >= 1, got {d}")

    worst = 1.0
    worst_pair: Optional[tuple[int, int]] = None
    for s in range(n):
        exact = dijkstra(aug.base, s)
        hop = hop_limited_distances(aug.graph, s, d)
        for t, dist in exact.items():
            if t == s:
                continue
            ratio = hop[t] / dist
            if ratio > worst:
                worst, worst_pair = ratio, (s, t)
    passed = worst <= 1.0 + eps_hat
    return HopsetReport(d=d, eps_hat=eps_hat, max_ratio=worst, violating_pair=None if passed else worst_pair)


def expand_edge(aug: AugmentedGraph, u: int, v: int) -> list[int]:
    """G′ 的一条边展开成 G 中的路径（u 在前）。"""
    key = (u, v) if u < v else (v, u)
    path = aug.shortcuts.get(key)
    if path is not None:
        return list(path) if path[0] == u else list(reversed(path))
    if aug.base.has_edge(u, v):
        return [u, v]
    raise GraphInvariantError(f"({u}, {v}) is not an edge of the augmented graph")


def expand_walk(aug: AugmentedGraph, walk: Sequence[int]) -> list[int]:
    """G′ 中的游走逐边展开成 G 中的游走。"""
    if not walk:
        return []
    out = [walk[0]]
    for a, b in zip(walk, walk[1:]):
        out.extend(expand_edge(aug, a, b)[1:])
    return out


@dataclass(frozen=True)
class ResolvedHopset:
    """流程实际使用的 hop set：G′、d 以及实测 ε̂。"""

    aug: AugmentedGraph
    d: int
    eps_hat: float
    report: Optional[HopsetReport]
    fallback: bool = False


def resolve_hopset(
    g: WeightedGraph,
    cfg: HopsetConfig,
    *,
    verify_cap: int = 512,
    executor: Optional[Executor] = None,
) -> ResolvedHopset:
    """构造 + 校验 + 失败时退回 identity。

    n 超过 verify_cap 时无法校验：identity 直接用 d = n-1，
    shortcut 按配置的 ε̂ 当作成立并告警。
    """
    n = g.n
    d = min(cfg.hop_bound(n), max(n - 1, 1))
    aug = augment(g, cfg, executor)

    if n > verify_cap:
        if cfg.strategy == "identity":
            return ResolvedHopset(aug=aug, d=max(n - 1, 1), eps_hat=0.0, report=None)
        logger.warning("[hopset] n=%s 超过校验上限 %s，按 ε̂=%s 使用未校验的 hop set", n, verify_cap, cfg.eps_hat)
        return ResolvedHopset(aug=aug, d=d, eps_hat=cfg.eps_hat, report=None)

    report = verify_hopset(aug, d, cfg.eps_hat, cap=verify_cap)
    if report.passed:
        return ResolvedHopset(aug=aug, d=d, eps_hat=report.measured_eps_hat, report=report)

    logger.warning(
        "[hopset] 校验失败（d=%s 比值=%.4g 违例对=%s），退回 identity d=%s",
        d,
        report.max_ratio,
        report.violating_pair,
        max(n - 1, 1),
    )
    identity = identity_hopset(g)
    return ResolvedHopset(aug=identity, d=max(n - 1, 1), eps_hat=0.0, report=report, fallback=True)
