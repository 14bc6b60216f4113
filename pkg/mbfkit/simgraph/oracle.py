"""不显式构造 H 的 MBF 预言机。

利用分解 A_H = ⊕_λ P_λ A_λ^d P_λ，其中 A_λ 是 G′ 上伸缩系数为
(1+ε̂)^{Λ-λ} 的邻接算子，P_λ 把层级 < λ 的节点坐标置为 ⊥。
H 上的一轮迭代因此变成：
    x ↦ r^V ⊕_λ P_λ (r^V A_λ)^d P_λ x
每个 λ 的 d 步内循环互相独立，可并行；到达不动点后提前结束。

记录 trace 时，每轮保存：
- 每个 (v, 目标) 的获胜层 λ
- 每层每个内步的前驱表（值来自哪个邻居）
trace_h_path 据此把最终状态里的一项还原成 G′ 中的游走。
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Optional

from ..algebra import BOTTOM, DistanceMap, StateVector
from ..engine import AdjacencyOperator, MbfAlgorithm, slf_apply, slf_apply_traced
from ..errors import InvalidParameterError, MissingTraceError, NonConvergenceError
from .simulated import SimulatedGraphH, level_stretch

logger = logging.getLogger(__name__)

DEFAULT_CAP_CONST = 8

# 每个内步：节点 -> {目标: 前驱邻居}
ParentTable = tuple[dict[int, int], ...]


@dataclass
class IterationTrace:
    """一轮预言机迭代的回溯信息。"""

    winners: tuple[dict[int, int], ...]
    steps: dict[int, list[ParentTable]] = field(default_factory=dict)


@dataclass
class OracleTrace:
    iterations: list[IterationTrace] = field(default_factory=list)


@dataclass
class OracleRun:
    state: StateVector
    iterations: int
    trace: Optional[OracleTrace] = None


def iteration_cap(n: int, cap_const: int = DEFAULT_CAP_CONST) -> int:
    """c·⌈log₂ n⌉²，至少 1。"""
    if n <= 1:
        return 1
    return max(1, cap_const * math.ceil(math.log2(n)) ** 2)


def _check_alg(H: SimulatedGraphH, alg: MbfAlgorithm) -> None:
    if alg.n != H.n:
        raise InvalidParameterError(f"algorithm is built for n={alg.n}, H has n={H.n}")
    if getattr(alg.module, "element_type", None) is not DistanceMap:
        raise InvalidParameterError(f"oracle only simulates distance-map algorithms, got {alg.name}")


def _project_level(x: StateVector, members: frozenset[int]) -> StateVector:
    return tuple(xv if v in members else BOTTOM for v, xv in enumerate(x))


def _level_pipeline(
    H: SimulatedGraphH,
    alg: MbfAlgorithm,
    x: StateVector,
    lam: int,
    record: bool,
) -> tuple[StateVector, list[ParentTable]]:
    """P_λ (r^V A_λ)^d P_λ x；到达不动点即停。"""
    members = H.levels.nodes_at_least(lam)
    A = AdjacencyOperator(H.graph, stretch=level_stretch(H, lam))
    power = alg.power
    y = _project_level(x, members)
    steps: list[ParentTable] = []
    for _ in range(H.d):
        if record:
            raw, parents = slf_apply_traced(A, y)
        else:
            raw = slf_apply(A, y, alg.module)
        nxt = power.project(alg.filter, raw)
        if nxt == y:
            break
        if record:
            steps.append(parents)
        y = nxt
    return _project_level(y, members), steps


def _winners(per_level: list[StateVector], merged: StateVector) -> tuple[dict[int, int], ...]:
    """每个 (v, 目标) 取值最小的层中编号最小的一层。"""
    out = []
    for v, xv in enumerate(merged):
        chosen: dict[int, int] = {}
        for t, value in xv.items():
            for lam, y in enumerate(per_level):
                if y[v].get(t) == value:
                    chosen[t] = lam
                    break
        out.append(chosen)
    return tuple(out)


def oracle_iterate(
    H: SimulatedGraphH,
    alg: MbfAlgorithm,
    x: StateVector,
    *,
    executor: Optional[Executor] = None,
    trace: Optional[OracleTrace] = None,
) -> StateVector:
    """H 上的一轮 r^V A_H x，不构造 H。trace 不为 None 时追加本轮回溯信息。"""
    _check_alg(H, alg)
    record = trace is not None
    levels = range(H.Lambda + 1)

    def run(lam: int) -> tuple[StateVector, list[ParentTable]]:
        return _level_pipeline(H, alg, x, lam, record)

    if executor is not None and H.Lambda > 0:
        results = list(executor.map(run, levels))
    else:
        results = [run(lam) for lam in levels]

    per_level = [state for state, _ in results]
    merged = alg.power.project(alg.filter, alg.power.sum(per_level))
    if record:
        step_tables = {lam: steps for lam, (_, steps) in enumerate(results)}
        trace.iterations.append(IterationTrace(winners=_winners(per_level, merged), steps=step_tables))
    return merged


def oracle_run(
    H: SimulatedGraphH,
    alg: MbfAlgorithm,
    *,
    cap_const: int = DEFAULT_CAP_CONST,
    executor: Optional[Executor] = None,
    record_trace: bool = False,
) -> OracleRun:
    """在 H 上迭代到不动点。

    alg.h 给定时最多迭代 h 轮；否则上限为 c·⌈log₂ n⌉²，
    超过上限仍未收敛抛 NonConvergenceError（带最后的状态）。
    """
    _check_alg(H, alg)
    cap = alg.h if alg.h is not None else iteration_cap(H.n, cap_const)
    trace = OracleTrace() if record_trace else None

    state = alg.power.project(alg.filter, alg.initial_state())
    iterations = 0
    while True:
        pending = OracleTrace() if record_trace else None
        nxt = oracle_iterate(H, alg, state, executor=executor, trace=pending)
        if nxt == state:
            break
        if iterations >= cap:
            if alg.h is not None:
                break
            logger.warning("[oracle] %s 在 %s 轮内未收敛", alg.name, cap)
            raise NonConvergenceError(iterations, partial_state=state)
        state = nxt
        iterations += 1
        if trace is not None and pending is not None:
            trace.iterations.extend(pending.iterations)
        logger.debug("[oracle] %s iteration=%s size=%s", alg.name, iterations, alg.power.size(state))

    logger.info("[oracle] %s 收敛：iterations=%s Λ=%s d=%s", alg.name, iterations, H.Lambda, H.d)
    return OracleRun(state=state, iterations=iterations, trace=trace)


def _walk_level(steps: list[ParentTable], v: int, target: int, walk: list[int]) -> int:
    """沿某层的内步前驱表从 v 倒推，返回本层起点 u，并把经过的节点追加到 walk。"""
    cur = v
    for table in reversed(steps):
        parents = table[cur]
        if target not in parents:
            raise MissingTraceError(f"no parent recorded for node {cur} target {target}")
        nxt = parents[target]
        if nxt != cur:
            walk.append(nxt)
            cur = nxt
    return cur


def trace_h_path(trace: Optional[OracleTrace], v: int, target: int) -> list[int]:
    """把最终状态里的项 (v, target) 还原成 G′ 中从 v 到 target 的游走。

    逐轮倒推：每轮找到获胜层，再沿该层内步前驱走到本轮起点；
    第 0 轮时起点必须就是 target（x⁽⁰⁾ 只含 {u: 0}）。
    """
    if trace is None:
        raise MissingTraceError("oracle run was not recorded")
    walk = [v]
    cur = v
    for it in reversed(trace.iterations):
        lam = it.winners[cur].get(target)
        if lam is None:
            raise MissingTraceError(f"no winning level for node {cur} target {target}")
        cur = _walk_level(it.steps.get(lam, []), cur, target, walk)
    if cur != target:
        raise MissingTraceError(f"trace for ({v}, {target}) ends at {cur}")
    return walk
