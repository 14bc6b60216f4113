"""MBF 类算法的通用执行器。

一次迭代 x ↦ r^V(A x)：
1. 传播：每条边 {v, w} 把 x_w 用 a_vw 缩放后送到 v
2. 聚合：v 上所有来稿（含对角项 a_vv ⊙ x_v）做 ⊕
3. 过滤：逐节点应用代表元投影 r

每个节点只读上一轮的（不可变）状态，因此节点间可以并行；
结果按位置收集，与调度顺序无关。
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Optional

from ..algebra import DistanceMap, Filter, IdentityFilter, PowerSemimodule, StateVector
from ..errors import CapExceededError
from ..graph import WeightedGraph

logger = logging.getLogger(__name__)

INF = math.inf

# v -> x⁽⁰⁾_v
InitBuilder = Callable[[int], Any]


@dataclass(frozen=True)
class MbfAlgorithm:
    """MBF 类算法 = (半模, 过滤器, 初值 x⁽⁰⁾, 迭代上限 h)。

    h=None 表示迭代到不动点。path_cap 只对路径半环有意义：
    未过滤的中间状态总路径数超过它就拒绝继续。

    step_filter 非空时每轮只用它投影，filter 留到最后一轮之后再用；
    要求 filter ∘ step_filter = filter。
    """

    name: str
    n: int
    module: Any
    init: InitBuilder
    filter: Filter = field(default_factory=IdentityFilter)
    h: Optional[int] = None
    path_cap: Optional[int] = None
    step_filter: Optional[Filter] = None

    @property
    def power(self) -> PowerSemimodule:
        return PowerSemimodule(self.module, self.n)

    @property
    def iteration_filter(self) -> Filter:
        return self.filter if self.step_filter is None else self.step_filter

    def initial_state(self) -> StateVector:
        """未过滤的 x⁽⁰⁾。"""
        return tuple(self.init(v) for v in range(self.n))

    def with_h(self, h: Optional[int]) -> "MbfAlgorithm":
        return replace(self, h=h)


@dataclass(frozen=True)
class AdjacencyOperator:
    """SLF A（或 A_λ）：图 + 伸缩系数 σ，a_vw = lift_edge(σ·ω(v,w))，a_vv = lift_loop。"""

    graph: WeightedGraph
    stretch: float = 1.0

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass
class MbfRun:
    """mbf_run 的结果。iterations 是状态仍在变化的轮数。"""

    state: StateVector
    iterations: int
    converged: bool


def aggregate(parts: list[DistanceMap]) -> DistanceMap:
    """⊕ 多个距离映射：拼接、排序、去重保留最小。"""
    return DistanceMap.aggregate(parts)


def _node_apply(module: Any, A: AdjacencyOperator, x: StateVector, v: int) -> Any:
    semiring = module.semiring
    parts = [module.scale(semiring.lift_loop(v), x[v])]
    sigma = A.stretch
    for w, weight in A.graph.neighbors(v):
        if x[w] == module.bottom:
            continue
        parts.append(module.scale(semiring.lift_edge(v, w, sigma * weight), x[w]))
    return module.sum(parts)


def _map_nodes(fn: Callable[[int], Any], n: int, executor: Optional[Executor]) -> StateVector:
    if executor is None or n < 2:
        return tuple(fn(v) for v in range(n))
    return tuple(executor.map(fn, range(n)))


def slf_apply(
    A: AdjacencyOperator,
    x: StateVector,
    module: Any,
    executor: Optional[Executor] = None,
) -> StateVector:
    """(A x)_v = ⊕_w a_vw ⊙ x_w。"""
    if len(x) != A.n:
        raise ValueError(f"state has {len(x)} entries, operator has {A.n} nodes")
    return _map_nodes(lambda v: _node_apply(module, A, x, v), A.n, executor)


def _node_apply_traced(A: AdjacencyOperator, x: StateVector, v: int) -> tuple[DistanceMap, dict[int, int]]:
    best = dict(x[v].items())
    parent = {t: v for t in best}
    sigma = A.stretch
    for w, weight in A.graph.neighbors(v):
        scaled = sigma * weight
        for t, d in x[w].items():
            cand = scaled + d
            if cand < best.get(t, INF):
                best[t] = cand
                parent[t] = w
    return DistanceMap(best), parent


def slf_apply_traced(
    A: AdjacencyOperator,
    x: StateVector,
    executor: Optional[Executor] = None,
) -> tuple[StateVector, tuple[dict[int, int], ...]]:
    """min-plus 的 A x，同时记录每个 (v, 目标) 的值来自哪个邻居。

    平局先留在原地（parent = v），再取 id 最小的邻居。
    """
    pairs = _map_nodes(lambda v: _node_apply_traced(A, x, v), A.n, executor)
    return tuple(p[0] for p in pairs), tuple(p[1] for p in pairs)


def _check_path_cap(alg: MbfAlgorithm, state: StateVector) -> None:
    if alg.path_cap is None:
        return
    size = alg.power.size(state)
    if size > alg.path_cap:
        raise CapExceededError(f"{alg.name} intermediate paths", size, alg.path_cap)


def mbf_step(
    alg: MbfAlgorithm,
    A: AdjacencyOperator,
    x: StateVector,
    executor: Optional[Executor] = None,
) -> StateVector:
    """x⁽ⁱ⁺¹⁾ = r^V A x⁽ⁱ⁾。"""
    unfiltered = slf_apply(A, x, alg.module, executor)
    _check_path_cap(alg, unfiltered)
    return alg.power.project(alg.iteration_filter, unfiltered)


def mbf_run(
    alg: MbfAlgorithm,
    A: AdjacencyOperator,
    *,
    executor: Optional[Executor] = None,
    filter_every_step: bool = True,
    fixpoint_cap: Optional[int] = None,
) -> MbfRun:
    """迭代到 h 轮或不动点。

    filter_every_step=False 时计算 r^V A^h x⁽⁰⁾（只在最后过滤一次），
    用于验证过滤位置不影响结果。alg.h 为 None 时上限为 fixpoint_cap（默认 n）。
    """
    if alg.h is not None:
        cap, must_converge = alg.h, False
    else:
        cap, must_converge = (fixpoint_cap if fixpoint_cap is not None else max(alg.n, 1)), True

    power = alg.power

    def step(s: StateVector) -> StateVector:
        if filter_every_step:
            return mbf_step(alg, A, s, executor)
        nxt = slf_apply(A, s, alg.module, executor)
        _check_path_cap(alg, nxt)
        return nxt

    state = alg.initial_state()
    if filter_every_step:
        state = power.project(alg.iteration_filter, state)

    iterations = 0
    converged = False
    while iterations < cap:
        nxt = step(state)
        if nxt == state:
            converged = True
            break
        state = nxt
        iterations += 1
        logger.debug("[mbf] %s iteration=%s size=%s", alg.name, iterations, power.size(state))

    if not converged and must_converge:
        # 再走一步确认是否恰好在上限处收敛
        converged = step(state) == state
        if not converged:
            logger.warning("[mbf] %s 在 %s 轮内未到达不动点", alg.name, cap)

    if not filter_every_step or alg.step_filter is not None:
        state = power.project(alg.filter, state)
    return MbfRun(state=state, iterations=iterations, converged=converged)
