"""代表元投影（过滤器）。

- SourceDetectionFilter: 只保留源集合内、距离 ≤ d、按 (距离, id) 最小的 k 项
- KsdpFilter: 对每个起点保留到 s 的 k 条最短路（distinct 时每个权重只留一条；
  k=None 时保留全部以 s 结尾的路径）

平局一律按字典序打破：(值, 节点 id) 或 (权重, 路径元组)。
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import groupby
from typing import AbstractSet, Optional

from ..algebra import BOTTOM, EMPTY_PATHS, DistanceMap, PathSet
from ..errors import InvalidParameterError

INF = math.inf


@dataclass(frozen=True)
class SourceDetectionFilter:
    """source detection 过滤器；sources=None 表示所有节点，k=None 表示不限。"""

    sources: Optional[frozenset[int]] = None
    d: float = INF
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.k is not None and self.k < 0:
            raise InvalidParameterError(f"k must be >= 0, got {self.k}")
        if self.d < 0:
            raise InvalidParameterError(f"distance cap must be >= 0, got {self.d}")

    def project(self, x: DistanceMap) -> DistanceMap:
        if not x or self.k == 0:
            return BOTTOM
        kept = [
            (value, node)
            for node, value in x.items()
            if value <= self.d and (self.sources is None or node in self.sources)
        ]
        if self.k is not None and len(kept) > self.k:
            kept = heapq.nsmallest(self.k, kept)
        if len(kept) == len(x):
            return x
        return DistanceMap._trusted({node: value for value, node in sorted(kept, key=lambda p: p[1])})


def source_detection_filter(
    x: DistanceMap,
    S: Optional[AbstractSet[int]] = None,
    d: float = INF,
    k: Optional[int] = None,
) -> DistanceMap:
    """函数式入口：等价于 SourceDetectionFilter(S, d, k).project(x)。"""
    sources = None if S is None else frozenset(S)
    return SourceDetectionFilter(sources=sources, d=d, k=k).project(x)


@dataclass(frozen=True)
class KsdpFilter:
    """kSDP / kDSDP 过滤器。"""

    target: int
    k: Optional[int]
    distinct: bool = False

    def __post_init__(self) -> None:
        if self.k is not None and self.k < 0:
            raise InvalidParameterError(f"k must be >= 0, got {self.k}")

    def project(self, x: PathSet) -> PathSet:
        if not x or self.k == 0:
            return EMPTY_PATHS
        ending = sorted(
            (path[0], weight, path) for path, weight in x.items() if path[-1] == self.target
        )
        if self.k is None:
            if len(ending) == len(x):
                return x
            return PathSet._trusted({p: w for _, w, p in sorted(ending, key=lambda t: t[2])})
        kept: dict[tuple[int, ...], float] = {}
        for _, group in groupby(ending, key=lambda t: t[0]):
            if self.distinct:
                chosen = []
                for _, by_weight in groupby(group, key=lambda t: t[1]):
                    chosen.append(next(by_weight))
                    if len(chosen) == self.k:
                        break
            else:
                chosen = list(group)[: self.k]
            for _, weight, path in chosen:
                kept[path] = weight
        if len(kept) == len(x):
            return x
        return PathSet._trusted({p: kept[p] for p in sorted(kept)})


def ksdp_filter(x: PathSet, s: int, k: int, distinct: bool = False) -> PathSet:
    """函数式入口：等价于 KsdpFilter(s, k, distinct).project(x)。"""
    return KsdpFilter(target=s, k=k, distinct=distinct).project(x)
