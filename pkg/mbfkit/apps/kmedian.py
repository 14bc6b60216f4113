"""k-median：候选采样 → 候选集上的 FRT 树 → 二叉化 → 树上精确 DP。

流程：
1. kmedian_candidates 每轮从剩余集合 U 采样 S，用 fire 实例经预言机求
   dist(·, S, H)，删掉离 S 最近的一半，直到 U 为空；Q 是所有 S 的并
2. 只对 Q 中的节点置 x⁽⁰⁾_v = {v: 0} 跑 LE 列表，得到 Q 上的 FRT 树；
   每个节点挂到自己 LE 列表的第一项（最近的候选）上，作为叶子的客户数
3. 二叉化后在树度量上做 DP，挑出至多 k 个叶子开设设施
最终目标值用 G 上的精确距离汇报。
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Mapping, Optional

import networkx as nx

from ..engine import fire
from ..errors import CapExceededError, InvalidParameterError
from ..frt import EmbedConfig, EmbedContext, FrtTree, build_context, build_frt_tree, compute_le_lists
from ..frt.stretch import distance_matrix
from ..graph import WeightedGraph, require_connected, weight_range
from ..rng import stream
from ..simgraph import oracle_run

logger = logging.getLogger(__name__)

INF = math.inf

BRUTEFORCE_MAX_NODES = 16


# ---- 有根树与二叉化 ----


@dataclass
class RootedTree:
    """一般的有根带权树。label 为叶子对应的图节点，内部节点为 -1。"""

    parent: list[int]
    weight: list[float]
    label: list[int]
    root: int = 0
    children: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.children:
            self.children = [[] for _ in self.parent]
            for u, p in enumerate(self.parent):
                if p >= 0:
                    self.children[p].append(u)

    def __len__(self) -> int:
        return len(self.parent)

    def leaves(self) -> dict[int, int]:
        """图节点 -> 树叶子。"""
        return {lab: u for u, lab in enumerate(self.label) if lab >= 0}

    def depth_weights(self) -> list[float]:
        """每个节点到根的边权和。"""
        acc = [0.0] * len(self)
        for u in self.preorder():
            if self.parent[u] >= 0:
                acc[u] = acc[self.parent[u]] + self.weight[u]
        return acc

    def preorder(self) -> list[int]:
        out, stack = [], [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def leaf_distances(self) -> dict[tuple[int, int], float]:
        """所有叶子对（按图节点）的树距离。"""
        depth = self.depth_weights()
        leaves = self.leaves()
        ancestors: dict[int, list[int]] = {}
        for lab, u in leaves.items():
            chain = []
            while u >= 0:
                chain.append(u)
                u = self.parent[u]
            ancestors[lab] = chain
        out: dict[tuple[int, int], float] = {}
        for a, b in itertools.product(leaves, repeat=2):
            if a == b:
                out[(a, b)] = 0.0
                continue
            seen = set(ancestors[a])
            lca = next(u for u in ancestors[b] if u in seen)
            out[(a, b)] = depth[leaves[a]] + depth[leaves[b]] - 2.0 * depth[lca]
        return out


def binarize(t: FrtTree) -> RootedTree:
    """把 FRT 树改写成每个节点至多两个孩子的树。

    多于两个孩子时，把多出的孩子挂到一串零权辅助节点上，叶子间距离不变。
    """
    graph_leaf = {leaf: v for v, leaf in t.leaf_of.items()}
    parent: list[int] = []
    weight: list[float] = []
    label: list[int] = []

    def add(p: int, w: float, lab: int) -> int:
        parent.append(p)
        weight.append(w)
        label.append(lab)
        return len(parent) - 1

    new_id = {t.root: add(-1, 0.0, graph_leaf.get(t.root, -1))}
    for node in t.nodes:
        kids = t.children.get(node.id, [])
        anchor = new_id[node.id]
        while len(kids) > 2:
            first, kids = kids[0], kids[1:]
            child = t.nodes[first]
            new_id[first] = add(anchor, child.weight, graph_leaf.get(first, -1))
            anchor = add(anchor, 0.0, -1)
        for kid in kids:
            child = t.nodes[kid]
            new_id[kid] = add(anchor, child.weight, graph_leaf.get(kid, -1))
    return RootedTree(parent=parent, weight=weight, label=label)


# ---- 树上的 k-median DP ----


@dataclass(frozen=True)
class TreeKMedian:
    cost: float
    facilities: frozenset[int]


def _convolve(a: list[float], b: list[float], k: int) -> tuple[list[float], list[int]]:
    """min-plus 卷积，截断到 k；返回结果与第二个向量取的份数。"""
    out = [INF] * (k + 1)
    split = [-1] * (k + 1)
    for i, ai in enumerate(a):
        if ai == INF:
            continue
        for j, bj in enumerate(b):
            if i + j > k or bj == INF:
                continue
            if ai + bj < out[i + j]:
                out[i + j] = ai + bj
                split[i + j] = j
    return out, split


def kmedian_tree_dp(rt: RootedTree, weights: Mapping[int, float], k: int) -> TreeKMedian:
    """在树度量上精确求解 k-median，设施只能开在叶子上。

    G[u][t][j]：u 的子树里开 j 个设施、u 由叶子 t 服务时子树内客户的最小代价。
    最近设施分配下，若 u 由子树 c 内的 t 服务，则 c 也由 t 服务；
    否则 c 要么跟 u 共用 t，要么由自己子树内的设施服务。
    """
    if k <= 0:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    leaves = rt.leaves()
    if not leaves:
        raise InvalidParameterError("tree has no leaves")
    dist = rt.leaf_distances()
    labels = sorted(leaves)

    inside: list[set[int]] = [set() for _ in range(len(rt))]
    G: list[dict[int, list[float]]] = [dict() for _ in range(len(rt))]
    best_inside: list[list[tuple[float, int]]] = [[] for _ in range(len(rt))]
    # (u, t) -> 每个孩子的 (卷积切分, 是否沿用 t)
    choices: dict[tuple[int, int], list[tuple[list[int], list[bool]]]] = {}

    for u in reversed(rt.preorder()):
        lab = rt.label[u]
        if lab >= 0:
            inside[u] = {lab}
            w = float(weights.get(lab, 0.0))
            for t in labels:
                row = [INF] * (k + 1)
                if t == lab:
                    row[1] = 0.0
                else:
                    row[0] = w * dist[(lab, t)]
                G[u][t] = row
        else:
            for c in rt.children[u]:
                inside[u] |= inside[c]
            for t in labels:
                acc = [0.0] + [INF] * k
                trail: list[tuple[list[int], list[bool]]] = []
                for c in rt.children[u]:
                    own = G[c][t]
                    if t in inside[c]:
                        vec, keep = own, [True] * (k + 1)
                    else:
                        vec, keep = [], []
                        for j in range(k + 1):
                            alt = best_inside[c][j][0]
                            if own[j] <= alt:
                                vec.append(own[j])
                                keep.append(True)
                            else:
                                vec.append(alt)
                                keep.append(False)
                    acc, split = _convolve(acc, vec, k)
                    trail.append((split, keep))
                G[u][t] = acc
                choices[(u, t)] = trail

        table = []
        for j in range(k + 1):
            candidates = [(G[u][t][j], t) for t in sorted(inside[u])]
            table.append(min(candidates))
        best_inside[u] = table

    root_best = min((best_inside[rt.root][j][0], j) for j in range(1, k + 1))
    cost, j = root_best
    if cost == INF:
        raise InvalidParameterError("no feasible placement")

    facilities: set[int] = set()
    stack = [(rt.root, j, best_inside[rt.root][j][1])]
    while stack:
        u, j, t = stack.pop()
        if rt.label[u] >= 0:
            if t == rt.label[u] and j == 1:
                facilities.add(t)
            continue
        trail = choices[(u, t)]
        kids = rt.children[u]
        # 从最后一个孩子往前拆卷积
        for c, (split, keep) in zip(reversed(kids), reversed(trail)):
            jc = split[j]
            if keep[jc]:
                stack.append((c, jc, t))
            else:
                stack.append((c, jc, best_inside[c][jc][1]))
            j -= jc
    return TreeKMedian(cost=cost, facilities=frozenset(facilities))


def tree_kmedian_bruteforce(rt: RootedTree, weights: Mapping[int, float], k: int) -> TreeKMedian:
    """穷举所有至多 k 个叶子的组合（测试用）。"""
    if k <= 0:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    dist = rt.leaf_distances()
    labels = sorted(rt.leaves())
    best = TreeKMedian(cost=INF, facilities=frozenset())
    for size in range(1, min(k, len(labels)) + 1):
        for combo in itertools.combinations(labels, size):
            cost = sum(float(weights.get(v, 0.0)) * min(dist[(v, f)] for f in combo) for v in labels)
            if cost < best.cost:
                best = TreeKMedian(cost=cost, facilities=frozenset(combo))
    return best


# ---- 图上的目标函数与穷举 ----


def kmedian_objective(g: WeightedGraph, facilities: frozenset[int] | set[int]) -> float:
    """Σ_v dist(v, F, G)。"""
    if not facilities:
        raise InvalidParameterError("facility set is empty")
    lengths = nx.multi_source_dijkstra_path_length(g.nx_graph, set(facilities), weight="weight")
    if len(lengths) < g.n:
        return INF
    return float(sum(lengths.values()))


def kmedian_bruteforce(g: WeightedGraph, k: int, cap: int = BRUTEFORCE_MAX_NODES) -> tuple[float, frozenset[int]]:
    """穷举最优解（只允许小图）。"""
    if g.n > cap:
        raise CapExceededError("k-median enumeration nodes", g.n, cap)
    if k <= 0:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    table = distance_matrix(g)
    best = (INF, frozenset())
    for combo in itertools.combinations(range(g.n), min(k, g.n)):
        cost = float(table[:, list(combo)].min(axis=1).sum())
        if cost < best[0]:
            best = (cost, frozenset(combo))
    return best


# ---- 完整流程 ----


@dataclass(frozen=True)
class KMedianSolution:
    facilities: frozenset[int]
    objective: float
    candidates: frozenset[int]
    tree_cost: Optional[float] = None

    def as_dict(self) -> dict:
        return {"facilities": sorted(self.facilities), "objective": self.objective}


def kmedian_candidates(
    context: EmbedContext,
    k: int,
    *,
    round_factor: float = 3.0,
    cap_const: int = 8,
    executor: Optional[Executor] = None,
) -> frozenset[int]:
    """按轮采样候选集 Q。"""
    n = context.H.n
    if not 1 <= k:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    if k >= n:
        return frozenset(range(n))

    rank = context.order.rank
    per_round = max(1, math.ceil(round_factor * k * math.log(n)))
    remaining = set(range(n))
    chosen: set[int] = set()
    round_no = 0
    while remaining:
        pool = sorted(remaining)
        size = min(per_round, len(pool))
        rng = stream(context.order.seed, "kmedian", context.sample, round_no)
        S = {pool[int(i)] for i in rng.choice(len(pool), size=size, replace=False)}
        chosen |= S
        if size == len(pool):
            break

        run = oracle_run(context.H, fire(n, S, INF), cap_const=cap_const, executor=executor)
        closeness = sorted((min(run.state[u].values(), default=INF), rank[u], u) for u in pool)
        drop = max(len(S), math.ceil(len(pool) / 2))
        remaining -= {u for _, _, u in closeness[:drop]}
        logger.debug("[kmedian] round=%s sampled=%s remaining=%s", round_no, size, len(remaining))
        round_no += 1

    logger.info("[kmedian] 候选集 |Q|=%s（k=%s，%s 轮）", len(chosen), k, round_no + 1)
    return frozenset(chosen)


def kmedian(
    g: WeightedGraph,
    k: int,
    cfg: EmbedConfig,
    sample: int = 0,
    *,
    round_factor: float = 3.0,
    executor: Optional[Executor] = None,
) -> KMedianSolution:
    if k <= 0:
        raise InvalidParameterError(f"k must be >= 1, got {k}")
    require_connected(g)
    context = build_context(g, cfg, sample, executor=executor)
    Q = kmedian_candidates(context, k, round_factor=round_factor, cap_const=cfg.cap_const, executor=executor)

    if k >= len(Q):
        return KMedianSolution(facilities=Q, objective=kmedian_objective(g, Q), candidates=Q, tree_cost=None)

    le_run = compute_le_lists(g, cfg, sample, sources=Q, context=context, executor=executor)
    # 每个节点挂到最近的候选上
    clients = Counter(lst[0][1] for lst in le_run.lists if lst)
    w_min, _ = weight_range(g)
    tree = build_frt_tree({q: le_run.lists[q] for q in Q}, context.order, w_min)
    result = kmedian_tree_dp(binarize(tree), clients, k)

    objective = kmedian_objective(g, result.facilities)
    logger.info("[kmedian] k=%s |F|=%s tree_cost=%.6g objective=%.6g", k, len(result.facilities), result.cost, objective)
    return KMedianSolution(facilities=result.facilities, objective=objective, candidates=Q, tree_cost=result.cost)
