"""max-min 半环与宽度映射半模 W（最宽路径）。

- 载体 R≥0 ∪ {∞}，⊕ = max，⊙ = min，zero = 0，one = ∞
- WidestMap: 节点 -> 宽度，缺省为 0
"""

from __future__ import annotations

import math
from typing import Any, Iterable

from .sparse import SparseMap

INF = math.inf


def maxmin_oplus(a: float, b: float) -> float:
    return a if a >= b else b


def maxmin_odot(a: float, b: float) -> float:
    return a if a <= b else b


class MaxMinSemiring:
    """S_max,min 半环。"""

    name = "max-min"

    @property
    def zero(self) -> float:
        return 0.0

    @property
    def one(self) -> float:
        return INF

    def oplus(self, a: float, b: float) -> float:
        return maxmin_oplus(a, b)

    def odot(self, a: float, b: float) -> float:
        return maxmin_odot(a, b)

    def lift_edge(self, v: int, w: int, weight: float) -> float:
        # 边权即容量
        return weight

    def lift_loop(self, v: int) -> float:
        return INF

    def __repr__(self) -> str:
        return "MaxMinSemiring()"


MAX_MIN = MaxMinSemiring()


class WidestMap(SparseMap):
    """宽度映射：节点 id -> 宽度，0 项不存储。"""

    ABSENT = 0.0
    __slots__ = ()

    @staticmethod
    def _better(a: float, b: float) -> bool:
        return a > b

    @staticmethod
    def _check_key(key: Any) -> int:
        node = int(key)
        if node < 0:
            raise ValueError(f"invalid node id {key!r}")
        return node

    @classmethod
    def _aggregate_key(cls, pair: tuple[Any, float]) -> tuple[Any, float]:
        return (pair[0], -pair[1])


WIDEST_BOTTOM = WidestMap()


def wmap_scale(s: float, x: WidestMap) -> WidestMap:
    """(s ⊙ x)_v = min{s, x_v}；s = 0 得到 ⊥。"""
    if s == 0 or not x:
        return WIDEST_BOTTOM
    if s == INF:
        return x
    return WidestMap._trusted({k: (v if v <= s else s) for k, v in x.items()})


class WidestMapModule:
    """W：max-min 半环上的宽度映射半模。"""

    semiring = MAX_MIN
    element_type = WidestMap

    @property
    def bottom(self) -> WidestMap:
        return WIDEST_BOTTOM

    def oplus(self, x: WidestMap, y: WidestMap) -> WidestMap:
        return x.merge(y)

    def scale(self, s: float, x: WidestMap) -> WidestMap:
        return wmap_scale(s, x)

    def sum(self, parts: Iterable[WidestMap]) -> WidestMap:
        return WidestMap.aggregate(parts)

    def size(self, x: WidestMap) -> int:
        return len(x)


WIDEST_MAPS = WidestMapModule()
