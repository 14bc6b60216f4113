"""FRT 采样流程：hop set → 层级 → H → 预言机跑 LE 列表 → 建树。

同一张图的多次采样共用一份 hop set（由 seed 决定），
层级、排名与 β 按采样编号取独立的随机流。
"""

from __future__ import annotations

import logging
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import AbstractSet, Optional

from ..graph import WeightedGraph, require_connected, weight_range
from ..hopset import HopsetConfig, ResolvedHopset, resolve_hopset
from ..simgraph import (
    DEFAULT_CAP_CONST,
    OracleRun,
    SimulatedGraphH,
    default_eps_hat,
    oracle_run,
    sample_levels,
)
from .le import LeList, RandomOrder, harmonic, le_algorithm, le_list_stats, sample_order, to_le_list
from .tree import FrtTree, build_frt_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbedConfig:
    """一次嵌入的参数。eps_hat=None 时取 1/⌈log₂ n⌉²。"""

    seed: int = 0
    hopset: HopsetConfig = field(default_factory=HopsetConfig)
    eps_hat: Optional[float] = None
    cap_const: int = DEFAULT_CAP_CONST
    verify_cap: int = 512
    record_trace: bool = False


@dataclass(frozen=True)
class EmbedContext:
    """某个采样编号下的 H 与随机全序。"""

    graph: WeightedGraph
    resolved: ResolvedHopset
    H: SimulatedGraphH
    order: RandomOrder
    sample: int


@dataclass
class LeRun:
    context: EmbedContext
    run: OracleRun
    lists: tuple[LeList, ...]

    @property
    def order(self) -> RandomOrder:
        return self.context.order


def build_context(
    g: WeightedGraph,
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    resolved: Optional[ResolvedHopset] = None,
    executor: Optional[Executor] = None,
) -> EmbedContext:
    require_connected(g)
    if resolved is None:
        resolved = resolve_hopset(g, cfg.hopset, verify_cap=cfg.verify_cap, executor=executor)
    eps_hat = cfg.eps_hat if cfg.eps_hat is not None else default_eps_hat(g.n)
    levels = sample_levels(g.n, cfg.seed, sample)
    H = SimulatedGraphH(aug=resolved.aug, levels=levels, d=resolved.d, eps_hat=eps_hat)
    order = sample_order(g.n, cfg.seed, sample)
    logger.debug("[frt] sample=%s Λ=%s d=%s ε̂=%s β=%.6f", sample, H.Lambda, H.d, eps_hat, order.beta)
    return EmbedContext(graph=g, resolved=resolved, H=H, order=order, sample=sample)


def compute_le_lists(
    g: WeightedGraph,
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    sources: Optional[AbstractSet[int]] = None,
    context: Optional[EmbedContext] = None,
    resolved: Optional[ResolvedHopset] = None,
    executor: Optional[Executor] = None,
) -> LeRun:
    """在 H 上跑 LE 列表实例（sources 给定时 x⁽⁰⁾ 只在这些节点上非 ⊥）。"""
    if context is None:
        context = build_context(g, cfg, sample, resolved=resolved, executor=executor)
    alg = le_algorithm(g.n, context.order, sources)
    run = oracle_run(
        context.H,
        alg,
        cap_const=cfg.cap_const,
        executor=executor,
        record_trace=cfg.record_trace,
    )
    lists = tuple(to_le_list(x) for x in run.state)

    stats = le_list_stats(lists)
    limit = 10 * harmonic(g.n)
    if stats.max_length > limit:
        logger.warning("[frt] LE 列表过长：max=%s > 10·H_n=%.2f", stats.max_length, limit)
    logger.info(
        "[frt] LE 列表完成：sample=%s iterations=%s mean=%.2f max=%s",
        sample,
        run.iterations,
        stats.mean_length,
        stats.max_length,
    )
    return LeRun(context=context, run=run, lists=lists)


def sample_tree(
    g: WeightedGraph,
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    resolved: Optional[ResolvedHopset] = None,
    executor: Optional[Executor] = None,
) -> tuple[LeRun, FrtTree]:
    """一次完整的 FRT 采样。"""
    le_run = compute_le_lists(g, cfg, sample, resolved=resolved, executor=executor)
    w_min, _ = weight_range(g)
    tree = build_frt_tree(le_run.lists, le_run.order, w_min)
    return le_run, tree
