"""树嵌入的伸缩率统计（蒙特卡洛）。"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import CapExceededError, InvalidParameterError
from ..graph import WeightedGraph, all_pairs_dijkstra
from .tree import FrtTree

# 判定 dist_T < dist_G 时允许的相对浮点误差
DOMINATION_SLACK = 1e-9


def distance_matrix(g: WeightedGraph) -> np.ndarray:
    table = np.full((g.n, g.n), np.inf)
    for s, dmap in enumerate(all_pairs_dijkstra(g)):
        for t, d in dmap.items():
            table[s, t] = d
    return table


def tree_distance_matrix(t: FrtTree, n: int) -> np.ndarray:
    """叶子两两之间的树距离，利用每个叶子到根的前缀和。"""
    table = np.zeros((n, n))
    chains: dict[int, list[tuple[int, float]]] = {}
    for v, leaf in t.leaf_of.items():
        chain = []
        acc = 0.0
        node = leaf
        while node >= 0:
            chain.append((node, acc))
            acc += t.nodes[node].weight
            node = t.nodes[node].parent
        chains[v] = chain
    for v, chain_v in chains.items():
        for w, chain_w in chains.items():
            if w <= v:
                continue
            # 同层逐级比较，找到最低公共祖先
            for (a, da), (b, db) in zip(chain_v, chain_w):
                if a == b:
                    table[v, w] = table[w, v] = da + db
                    break
    return table


@dataclass(frozen=True, eq=False)
class StretchReport:
    samples: int
    pairs: int
    max_mean_ratio: float
    mean_ratio: float
    domination_violations: int
    mean_ratios: np.ndarray

    def fraction_within(self, bound: float) -> float:
        if self.pairs == 0:
            return 1.0
        upper = self.mean_ratios[np.triu_indices_from(self.mean_ratios, k=1)]
        return float(np.count_nonzero(upper <= bound)) / self.pairs

    def as_dict(self) -> dict[str, float]:
        return {
            "samples": self.samples,
            "pairs": self.pairs,
            "max_mean_ratio": self.max_mean_ratio,
            "mean_ratio": self.mean_ratio,
            "domination_violations": self.domination_violations,
            "fraction_within_16_ln_n": self.fraction_within(16.0 * math.log(max(self.mean_ratios.shape[0], 2))),
        }


def stretch_report(g: WeightedGraph, trees: Sequence[FrtTree], cap: int = 512) -> StretchReport:
    """逐对估计 E[dist_T / dist_G]，并统计 dist_T < dist_G 的次数（必须为 0）。"""
    if g.n > cap:
        raise CapExceededError("stretch pair enumeration nodes", g.n, cap)
    if not trees:
        raise InvalidParameterError("need at least one tree")
    exact = distance_matrix(g)
    upper = np.triu_indices(g.n, k=1)
    base = exact[upper]

    total = np.zeros(g.n * (g.n - 1) // 2)
    violations = 0
    for t in trees:
        tdist = tree_distance_matrix(t, g.n)[upper]
        violations += int(np.count_nonzero(tdist < base * (1.0 - DOMINATION_SLACK)))
        total += tdist / base

    means = total / len(trees)
    mean_matrix = np.zeros((g.n, g.n))
    mean_matrix[upper] = means
    mean_matrix = mean_matrix + mean_matrix.T
    pairs = len(means)
    return StretchReport(
        samples=len(trees),
        pairs=pairs,
        max_mean_ratio=float(means.max()) if pairs else 1.0,
        mean_ratio=float(means.mean()) if pairs else 1.0,
        domination_violations=violations,
        mean_ratios=mean_matrix,
    )
