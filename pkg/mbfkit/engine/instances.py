"""具体的 MBF 类算法实例。

每个构造器返回配置好的 MbfAlgorithm（半模、过滤器、x⁽⁰⁾、h）：
- 距离类（min-plus）：source_detection / sssp / kssp / apsp / hop_apsp / mssp / fire
- 宽度类（max-min）：sswp / apwp / mswp
- 路径类（all-paths）：ksdp / kdsdp
- 布尔：connectivity
"""

from __future__ import annotations

import math
from dataclasses import replace
from typing import AbstractSet, Iterable, Optional

from ..algebra import (
    BOTTOM,
    DISTANCE_MAPS,
    REACH_SETS,
    WIDEST_BOTTOM,
    WIDEST_MAPS,
    IdentityFilter,
    PathSet,
    PathSetModule,
    WidestMap,
    unit_map,
)
from ..errors import InvalidParameterError
from .core import MbfAlgorithm
from .filters import KsdpFilter, SourceDetectionFilter

INF = math.inf

DEFAULT_PATH_CAP = 1_000_000


def _check_n(n: int) -> None:
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")


def _check_node(n: int, s: int, what: str = "source") -> None:
    if not 0 <= s < n:
        raise InvalidParameterError(f"{what} {s} out of range for n={n}")


def _check_h(h: Optional[int]) -> None:
    if h is not None and h < 0:
        raise InvalidParameterError(f"iteration count must be >= 0, got {h}")


def _node_set(n: int, nodes: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(int(v) for v in nodes)
    for v in out:
        _check_node(n, v, what)
    return out


# ---- min-plus ----


def source_detection(
    n: int,
    S: AbstractSet[int],
    d: float = INF,
    k: Optional[int] = None,
    h: Optional[int] = None,
) -> MbfAlgorithm:
    """(S, h, d, k)-source detection：每个节点求 S 中 h 跳内、距离 ≤ d 的最近 k 个源。"""
    _check_n(n)
    _check_h(h)
    sources = _node_set(n, S, "source")
    flt = SourceDetectionFilter(sources=sources, d=d, k=k)
    return MbfAlgorithm(
        name="source-detection",
        n=n,
        module=DISTANCE_MAPS,
        init=lambda v: unit_map(v) if v in sources else BOTTOM,
        filter=flt,
        h=h,
    )


def sssp(n: int, s: int) -> MbfAlgorithm:
    """单源最短路：S = {s}, k = 1。"""
    _check_n(n)
    _check_node(n, s)
    return replace(source_detection(n, {s}, k=1), name="sssp")


def kssp(n: int, k: int, h: Optional[int] = None) -> MbfAlgorithm:
    """每个节点求离自己最近的 k 个节点（按 (距离, id)）。"""
    _check_n(n)
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    _check_h(h)
    return MbfAlgorithm(
        name="kssp",
        n=n,
        module=DISTANCE_MAPS,
        init=unit_map,
        filter=SourceDetectionFilter(k=k),
        h=h,
    )


def apsp(n: int) -> MbfAlgorithm:
    """全源最短路：x⁽⁰⁾ 为单位向量，恒等过滤器，迭代到不动点。"""
    _check_n(n)
    return MbfAlgorithm(name="apsp", n=n, module=DISTANCE_MAPS, init=unit_map, filter=IdentityFilter())


def hop_apsp(n: int, h: int) -> MbfAlgorithm:
    """全源 h 跳距离：恰好 h 轮。"""
    _check_n(n)
    if h < 0:
        raise InvalidParameterError(f"hop count must be >= 0, got {h}")
    return MbfAlgorithm(name="hop-apsp", n=n, module=DISTANCE_MAPS, init=unit_map, filter=IdentityFilter(), h=h)


def mssp(n: int, S: AbstractSet[int]) -> MbfAlgorithm:
    """多源最短路：每个节点求到 S 中每个源的距离。"""
    _check_n(n)
    sources = _node_set(n, S, "source")
    return replace(source_detection(n, sources, k=len(sources)), name="mssp")


def fire(n: int, burning: AbstractSet[int], d: float, h: Optional[int] = None) -> MbfAlgorithm:
    """森林火灾：节点是否在某个着火点 d 距离之内（保留最近的一个着火点）。"""
    _check_n(n)
    if d < 0:
        raise InvalidParameterError(f"distance cap must be >= 0, got {d}")
    return replace(source_detection(n, burning, d=d, k=1, h=h), name="fire")


# ---- max-min ----


def _widest(name: str, n: int, sources: Optional[frozenset[int]]) -> MbfAlgorithm:
    def init(v: int) -> WidestMap:
        if sources is None or v in sources:
            return WidestMap._trusted({v: INF})
        return WIDEST_BOTTOM

    return MbfAlgorithm(name=name, n=n, module=WIDEST_MAPS, init=init, filter=IdentityFilter())


def sswp(n: int, s: int) -> MbfAlgorithm:
    """单源最宽路。"""
    _check_n(n)
    _check_node(n, s)
    return _widest("sswp", n, frozenset({s}))


def apwp(n: int) -> MbfAlgorithm:
    """全源最宽路。"""
    _check_n(n)
    return _widest("apwp", n, None)


def mswp(n: int, S: AbstractSet[int]) -> MbfAlgorithm:
    """多源最宽路。"""
    _check_n(n)
    return _widest("mswp", n, _node_set(n, S, "source"))


# ---- all-paths ----


def ksdp(
    n: int,
    s: int,
    k: int,
    distinct: bool = False,
    h: Optional[int] = None,
    path_cap: Optional[int] = DEFAULT_PATH_CAP,
) -> MbfAlgorithm:
    """k 最短路距离：每个节点保留到 s 的 k 条最轻无环路径。

    k ≥ 2 时邻居留下的 k 条路径可能全部经过 v，拼接后成环被丢弃，
    所以迭代中只丢掉不以 s 结尾的路径，前 k 条留到最后一轮之后再取。
    """
    _check_n(n)
    _check_node(n, s)
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    _check_h(h)
    return MbfAlgorithm(
        name="kdsdp" if distinct else "ksdp",
        n=n,
        module=PathSetModule(n),
        init=lambda v: PathSet._trusted({(v,): 0.0}),
        filter=KsdpFilter(target=s, k=k, distinct=distinct),
        h=h,
        path_cap=path_cap,
        step_filter=KsdpFilter(target=s, k=None) if k >= 2 else None,
    )


def kdsdp(
    n: int,
    s: int,
    k: int,
    h: Optional[int] = None,
    path_cap: Optional[int] = DEFAULT_PATH_CAP,
) -> MbfAlgorithm:
    """k 个互不相同的最短路权重。"""
    return ksdp(n, s, k, distinct=True, h=h, path_cap=path_cap)


# ---- Boolean ----


def connectivity(n: int, h: Optional[int] = None) -> MbfAlgorithm:
    """h 跳可达性；h=None 时迭代到不动点（即连通分量）。"""
    _check_n(n)
    _check_h(h)
    return MbfAlgorithm(
        name="connectivity",
        n=n,
        module=REACH_SETS,
        init=lambda v: frozenset({v}),
        filter=IdentityFilter(),
        h=h,
    )

