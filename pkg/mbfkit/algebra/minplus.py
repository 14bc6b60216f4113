"""min-plus 半环与距离映射半模 D。

- 载体 R≥0 ∪ {∞}，⊕ = min，⊙ = +，zero = ∞，one = 0
- DistanceMap: 节点 -> 距离 的稀疏向量，缺省为 ∞
"""

from __future__ import annotations

import math
from typing import Any, Iterable

from .sparse import SparseMap

INF = math.inf

MinPlusValue = float


def minplus_oplus(a: MinPlusValue, b: MinPlusValue) -> MinPlusValue:
    """a ⊕ b = min{a, b}"""
    return a if a <= b else b


def minplus_odot(a: MinPlusValue, b: MinPlusValue) -> MinPlusValue:
    """a ⊙ b = a + b，∞ 吸收。"""
    if a == INF or b == INF:
        return INF
    return a + b


class MinPlusSemiring:
    """S_min,+ 半环。"""

    name = "min-plus"

    @property
    def zero(self) -> float:
        return INF

    @property
    def one(self) -> float:
        return 0.0

    def oplus(self, a: float, b: float) -> float:
        return minplus_oplus(a, b)

    def odot(self, a: float, b: float) -> float:
        return minplus_odot(a, b)

    def lift_edge(self, v: int, w: int, weight: float) -> float:
        return weight

    def lift_loop(self, v: int) -> float:
        return 0.0

    def __repr__(self) -> str:
        return "MinPlusSemiring()"


MIN_PLUS = MinPlusSemiring()


class DistanceMap(SparseMap):
    """距离映射：节点 id -> 距离，∞ 项不存储，按节点 id 排序。"""

    ABSENT = INF
    __slots__ = ()

    @staticmethod
    def _check_key(key: Any) -> int:
        node = int(key)
        if node < 0:
            raise ValueError(f"invalid node id {key!r}")
        return node

    def nodes(self) -> list[int]:
        return list(self._entries)

    def sorted_by_value(self) -> list[tuple[float, int]]:
        """按 (距离, 节点) 排序的 (距离, 节点) 列表。"""
        return sorted((v, k) for k, v in self._entries.items())


BOTTOM = DistanceMap()


def dmap_oplus(x: DistanceMap, y: DistanceMap) -> DistanceMap:
    """(x ⊕ y)_v = min{x_v, y_v}"""
    return x.merge(y)


def dmap_scale(s: MinPlusValue, x: DistanceMap) -> DistanceMap:
    """(s ⊙ x)_v = s + x_v；s = ∞ 得到 ⊥。"""
    if s == INF or not x:
        return BOTTOM
    if s == 0:
        return x
    return DistanceMap._trusted({k: s + v for k, v in x.items()})


def unit_map(v: int) -> DistanceMap:
    """单位向量 {v: 0}。"""
    return DistanceMap._trusted({v: 0.0})


class DistanceMapModule:
    """D：min-plus 半环上的距离映射半模。"""

    semiring = MIN_PLUS
    element_type = DistanceMap

    @property
    def bottom(self) -> DistanceMap:
        return BOTTOM

    def oplus(self, x: DistanceMap, y: DistanceMap) -> DistanceMap:
        return dmap_oplus(x, y)

    def scale(self, s: float, x: DistanceMap) -> DistanceMap:
        return dmap_scale(s, x)

    def sum(self, parts: Iterable[DistanceMap]) -> DistanceMap:
        return DistanceMap.aggregate(parts)

    def size(self, x: DistanceMap) -> int:
        return len(x)

    def __repr__(self) -> str:
        return "DistanceMapModule()"


DISTANCE_MAPS = DistanceMapModule()
