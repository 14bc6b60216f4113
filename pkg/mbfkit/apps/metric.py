"""近似度量：把 APSP 实例交给预言机，得到 H 的最短路距离表。

dist_H 是一个真实图的最短路度量，因此三角不等式严格成立，
而且 dist_G ≤ dist_H ≤ (1+ε̂)^{Λ+1}·(1+ε̂_hopset)·dist_G。
"""

from __future__ import annotations

import logging
from concurrent.futures import Executor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..engine import apsp
from ..errors import CapExceededError
from ..graph import WeightedGraph
from ..frt import EmbedConfig, EmbedContext, build_context
from ..simgraph import oracle_run

logger = logging.getLogger(__name__)

DEFAULT_TABLE_CAP = 4096


@dataclass(frozen=True, eq=False)
class ApproxMetric:
    table: np.ndarray
    bound_factor: float
    iterations: int

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def distance(self, v: int, w: int) -> float:
        return float(self.table[v, w])

    def as_rows(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.table]


def approx_metric(
    g: WeightedGraph,
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    table_cap: int = DEFAULT_TABLE_CAP,
    context: Optional[EmbedContext] = None,
    executor: Optional[Executor] = None,
) -> ApproxMetric:
    if g.n > table_cap:
        raise CapExceededError("metric table nodes", g.n, table_cap)
    if context is None:
        context = build_context(g, cfg, sample, executor=executor)
    H = context.H
    run = oracle_run(H, apsp(g.n), cap_const=cfg.cap_const, executor=executor)

    table = np.full((g.n, g.n), np.inf)
    for v, xv in enumerate(run.state):
        for w, dist in xv.items():
            table[v, w] = dist
    # 不同方向的浮点求和顺序可能不同，取较小者保持对称
    table = np.minimum(table, table.T)
    np.fill_diagonal(table, 0.0)

    bound = H.sandwich_factor() * (1.0 + context.resolved.eps_hat)
    logger.info("[metric] n=%s Λ=%s iterations=%s bound=%.6f", g.n, H.Lambda, run.iterations, bound)
    return ApproxMetric(table=table, bound_factor=bound, iterations=run.iterations)
