"""Buy-at-bulk 网络设计：在 FRT 树上路由，再把树边映射回 G。

1. 采样一棵 FRT 树（记录预言机 trace）
2. 每个需求沿唯一树路径路由，累计每条树边的流量 d_e
3. 每条树边选使 c_i·⌈d_e/u_i⌉ 最小的线缆类型（同代价取编号小的）
4. 用 reconstruct_path 把树边还原成 G 路径，在路径的每条 G 边上装同样的线缆
"""

from __future__ import annotations

import json
import logging
import math
from collections import Counter
from concurrent.futures import Executor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

from ..errors import GraphParseError, InvalidParameterError
from ..frt import EmbedConfig, FrtTree, reconstruct_path, sample_tree
from ..graph import WeightedGraph
from ..hopset import ResolvedHopset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Demand:
    source: int
    target: int
    amount: float


@dataclass(frozen=True)
class Cable:
    capacity: float
    cost: float


@dataclass
class BabSolution:
    """installation: (u, v, 线缆编号) -> 根数，u < v。"""

    tree: FrtTree
    tree_cost: float
    cost: float
    installation: Counter = field(default_factory=Counter)
    flow: Counter = field(default_factory=Counter)
    tree_load: dict[int, float] = field(default_factory=dict)

    def capacity(self, cables: Sequence[Cable], u: int, v: int) -> float:
        key = (u, v) if u < v else (v, u)
        return sum(
            cables[i].capacity * mult for (a, b, i), mult in self.installation.items() if (a, b) == key
        )

    def as_dict(self) -> dict:
        edges = [
            {"u": u, "v": v, "cable": i, "multiplicity": mult}
            for (u, v, i), mult in sorted(self.installation.items())
        ]
        return {"cost": self.cost, "tree_cost": self.tree_cost, "edges": edges}


def _check_instance(g: WeightedGraph, demands: Sequence[Demand], cables: Sequence[Cable]) -> None:
    if not cables:
        raise InvalidParameterError("need at least one cable type")
    for c in cables:
        if c.capacity <= 0 or c.cost < 0:
            raise InvalidParameterError(f"invalid cable {c}")
    for dem in demands:
        for v in (dem.source, dem.target):
            if not 0 <= v < g.n:
                raise InvalidParameterError(f"demand endpoint {v} out of range for n={g.n}")
        if dem.amount <= 0:
            raise InvalidParameterError(f"demand amount must be > 0, got {dem.amount}")


def choose_cable(load: float, cables: Sequence[Cable]) -> tuple[int, int, float]:
    """(编号, 根数, 单位长度代价)：最小化 c_i·⌈load/u_i⌉。"""
    best: Optional[tuple[float, int, int]] = None
    for i, c in enumerate(cables):
        mult = math.ceil(load / c.capacity)
        price = c.cost * mult
        if best is None or price < best[0]:
            best = (price, i, mult)
    price, i, mult = best
    return i, mult, price


def route_on_tree(t: FrtTree, demands: Sequence[Demand]) -> dict[int, float]:
    """树边（以子节点编号表示）-> 流量。"""
    load: dict[int, float] = {}
    for dem in demands:
        if dem.source == dem.target:
            continue
        a, b = t.leaf_of[dem.source], t.leaf_of[dem.target]
        while a != b:
            for node in (a, b):
                load[node] = load.get(node, 0.0) + dem.amount
            a, b = t.nodes[a].parent, t.nodes[b].parent
    return load


def buy_at_bulk(
    g: WeightedGraph,
    demands: Sequence[Demand],
    cables: Sequence[Cable],
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    resolved: Optional[ResolvedHopset] = None,
    executor: Optional[Executor] = None,
) -> BabSolution:
    _check_instance(g, demands, cables)
    le_run, tree = sample_tree(g, replace(cfg, record_trace=True), sample, resolved=resolved, executor=executor)
    trace = le_run.run.trace
    aug = le_run.context.resolved.aug

    load = route_on_tree(tree, demands)
    installation: Counter = Counter()
    flow: Counter = Counter()
    tree_cost = 0.0
    for child in sorted(load):
        d_e = load[child]
        i, mult, price = choose_cable(d_e, cables)
        tree_cost += tree.nodes[child].weight * price
        walk = reconstruct_path(tree, child, trace, aug)
        for u, v in zip(walk, walk[1:]):
            key = (u, v) if u < v else (v, u)
            installation[key + (i,)] += mult
            flow[key] += d_e

    cost = sum(cables[i].cost * mult * g.weight(u, v) for (u, v, i), mult in installation.items())
    logger.info(
        "[bab] demands=%s tree_edges=%s g_edges=%s tree_cost=%.6g cost=%.6g",
        len(demands),
        len(load),
        len(flow),
        tree_cost,
        cost,
    )
    return BabSolution(tree=tree, tree_cost=tree_cost, cost=cost, installation=installation, flow=flow, tree_load=load)


def load_bab_instance(path: str | Path) -> tuple[list[Demand], list[Cable]]:
    """读取 {"demands": [[s, t, amount], ...], "cables": [[capacity, cost], ...]}。"""
    p = Path(path)
    if not p.exists():
        raise GraphParseError("file not found", path=str(p))
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
        demands = [Demand(int(s), int(t), float(a)) for s, t, a in data.get("demands", [])]
        cables = [Cable(float(u), float(c)) for u, c in data.get("cables", [])]
    except (json.JSONDecodeError, TypeError, ValueError, AttributeError) as e:
        raise GraphParseError(f"malformed buy-at-bulk instance: {e}", path=str(p)) from e
    return demands, cables
