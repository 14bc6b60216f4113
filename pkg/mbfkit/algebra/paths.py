"""全路径半环 P_min,+。

元素是“无环路径 -> 权重”的稀疏映射（缺省 ∞）：
- (x ⊕ y)_π = min{x_π, y_π}
- (x ⊙ y)_π = min{x_π¹ + y_π² | π = π¹ ∘ π²}，π¹ 的终点等于 π² 的起点
  拼接后出现重复节点的路径直接丢弃
路径用节点元组表示，元组的字典序即规范路径序。
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Any, Iterable

from .sparse import SparseMap

INF = math.inf

Path = tuple[int, ...]


class PathSet(SparseMap):
    """路径集合：路径元组 -> 权重。"""

    ABSENT = INF
    __slots__ = ()

    @staticmethod
    def _check_key(key: Any) -> Path:
        path = tuple(int(v) for v in key)
        if not path:
            raise ValueError("empty path")
        if len(set(path)) != len(path):
            raise ValueError(f"path {path} is not loop-free")
        return path

    def paths(self) -> list[Path]:
        return list(self._entries)

    def starting_at(self, v: int) -> "PathSet":
        return PathSet._trusted({p: w for p, w in self._entries.items() if p[0] == v})


EMPTY_PATHS = PathSet()


def pathset_oplus(x: PathSet, y: PathSet) -> PathSet:
    """逐路径取最小权重。"""
    return x.merge(y)


def pathset_odot(x: PathSet, y: PathSet) -> PathSet:
    """按拼接点枚举所有可拼接的 (π¹, π²)，取最小复合权重。"""
    if not x or not y:
        return EMPTY_PATHS
    by_first: dict[int, list[tuple[Path, float]]] = defaultdict(list)
    for path, weight in y.items():
        by_first[path[0]].append((path, weight))

    out: dict[Path, float] = {}
    for left, w_left in x.items():
        tail = by_first.get(left[-1])
        if not tail:
            continue
        seen = set(left)
        for right, w_right in tail:
            rest = right[1:]
            if any(v in seen for v in rest):
                continue
            path = left + rest
            weight = w_left + w_right
            old = out.get(path)
            if old is None or weight < old:
                out[path] = weight
    return PathSet._trusted({p: out[p] for p in sorted(out)})


class PathSemiring:
    """P_min,+ 半环；one 需要知道节点全集。"""

    name = "all-paths"

    def __init__(self, n: int):
        self.n = n
        self._one = PathSet._trusted({(v,): 0.0 for v in range(n)})

    @property
    def zero(self) -> PathSet:
        return EMPTY_PATHS

    @property
    def one(self) -> PathSet:
        return self._one

    def oplus(self, a: PathSet, b: PathSet) -> PathSet:
        return pathset_oplus(a, b)

    def odot(self, a: PathSet, b: PathSet) -> PathSet:
        return pathset_odot(a, b)

    def lift_edge(self, v: int, w: int, weight: float) -> PathSet:
        return PathSet._trusted({(v, w): float(weight)})

    def lift_loop(self, v: int) -> PathSet:
        return PathSet._trusted({(v,): 0.0})

    def __repr__(self) -> str:
        return f"PathSemiring(n={self.n})"


class PathSetModule:
    """P_min,+ 作为自身上的半模（scale 即 ⊙）。"""

    element_type = PathSet

    def __init__(self, n: int):
        self.semiring = PathSemiring(n)

    @property
    def bottom(self) -> PathSet:
        return EMPTY_PATHS

    def oplus(self, x: PathSet, y: PathSet) -> PathSet:
        return pathset_oplus(x, y)

    def scale(self, s: PathSet, x: PathSet) -> PathSet:
        return pathset_odot(s, x)

    def sum(self, parts: Iterable[PathSet]) -> PathSet:
        return PathSet.aggregate(parts)

    def size(self, x: PathSet) -> int:
        return len(x)
