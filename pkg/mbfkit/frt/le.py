"""LE 列表（least-element list）。

给定节点的随机排名 rank，过滤器 r 删除被支配的项：
    r(x)_v = ∞  若存在 rank(w) < rank(v) 且 x_w ≤ x_v
保留下来的项按距离升序时排名严格递减；排名最小的节点总在列表里。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import AbstractSet, Optional, Sequence

from ..algebra import BOTTOM, DISTANCE_MAPS, DistanceMap, unit_map
from ..engine import MbfAlgorithm
from ..errors import InvalidParameterError, MalformedLeListError
from ..rng import stream

logger = logging.getLogger(__name__)

# 按距离升序的 (距离, 节点)
LeList = tuple[tuple[float, int], ...]


@dataclass(frozen=True)
class RandomOrder:
    """节点的随机全序（rank 是 [0, n) 上的双射）与 β ∈ [1, 2)。"""

    rank: tuple[int, ...]
    beta: float
    seed: int = 0

    def __post_init__(self) -> None:
        if sorted(self.rank) != list(range(len(self.rank))):
            raise InvalidParameterError("rank must be a permutation of range(n)")
        if not 1.0 <= self.beta < 2.0:
            raise InvalidParameterError(f"beta must lie in [1, 2), got {self.beta}")

    @property
    def n(self) -> int:
        return len(self.rank)

    def first(self) -> int:
        """排名为 0 的节点。"""
        return self.rank.index(0)


def sample_order(n: int, seed: int, sample: int = 0) -> RandomOrder:
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    perm = stream(seed, "order", sample).permutation(n)
    rank = [0] * n
    for position, node in enumerate(perm):
        rank[int(node)] = position
    beta = float(stream(seed, "beta", sample).uniform(1.0, 2.0))
    return RandomOrder(rank=tuple(rank), beta=beta, seed=seed)


@dataclass(frozen=True)
class LeFilter:
    """LE 过滤器：按 (距离, 排名) 扫描，只保留排名刷新最小值的项。"""

    order: RandomOrder

    def project(self, x: DistanceMap) -> DistanceMap:
        if len(x) <= 1:
            return x
        kept = _scan(x, self.order.rank)
        if len(kept) == len(x):
            return x
        return DistanceMap._trusted({v: d for d, v in sorted(kept, key=lambda p: p[1])})


def _scan(x: DistanceMap, rank: Sequence[int]) -> list[tuple[float, int]]:
    out = []
    best = len(rank)
    for dist, r, node in sorted((d, rank[v], v) for v, d in x.items()):
        if r < best:
            best = r
            out.append((dist, node))
    return out


def le_filter(x: DistanceMap, order: RandomOrder) -> DistanceMap:
    return LeFilter(order).project(x)


def le_algorithm(n: int, order: RandomOrder, sources: Optional[AbstractSet[int]] = None) -> MbfAlgorithm:
    """LE 列表实例：x⁽⁰⁾_v = {v: 0}（sources 给定时只对其中的节点），LE 过滤器。"""
    if order.n != n:
        raise InvalidParameterError(f"order covers {order.n} nodes, expected {n}")
    allowed = None if sources is None else frozenset(sources)
    return MbfAlgorithm(
        name="le-lists",
        n=n,
        module=DISTANCE_MAPS,
        init=lambda v: unit_map(v) if allowed is None or v in allowed else BOTTOM,
        filter=LeFilter(order),
    )


def to_le_list(x: DistanceMap) -> LeList:
    return tuple(x.sorted_by_value())


def validate_le_list(lst: LeList, order: RandomOrder) -> None:
    """距离严格升序且排名严格递减，否则抛 MalformedLeListError。"""
    for (d1, v1), (d2, v2) in zip(lst, lst[1:]):
        if not d1 < d2:
            raise MalformedLeListError(f"distances not strictly increasing at ({d1}, {v1}), ({d2}, {v2})")
        if not order.rank[v1] > order.rank[v2]:
            raise MalformedLeListError(f"node {v1} dominates node {v2}")


def harmonic(n: int) -> float:
    return sum(1.0 / i for i in range(1, n + 1))


@dataclass(frozen=True)
class LeListStats:
    mean_length: float
    max_length: int
    harmonic_n: float

    def as_dict(self) -> dict[str, float]:
        return {"mean_length": self.mean_length, "max_length": self.max_length, "harmonic_n": self.harmonic_n}


def le_list_stats(lists: Sequence[LeList]) -> LeListStats:
    present = [lst for lst in lists if lst]
    lengths = [len(lst) for lst in present]
    mean = sum(lengths) / len(lengths) if lengths else 0.0
    return LeListStats(mean_length=mean, max_length=max(lengths, default=0), harmonic_n=harmonic(len(lists)))
