"""基于树嵌入的下游近似算法：近似度量、k-median、buy-at-bulk。"""

from .buyatbulk import BabSolution, Cable, Demand, buy_at_bulk, choose_cable, load_bab_instance, route_on_tree
from .kmedian import (
    KMedianSolution,
    RootedTree,
    TreeKMedian,
    binarize,
    kmedian,
    kmedian_bruteforce,
    kmedian_candidates,
    kmedian_objective,
    kmedian_tree_dp,
    tree_kmedian_bruteforce,
)
from .metric import ApproxMetric, approx_metric

__all__ = [
    "BabSolution",
    "Cable",
    "Demand",
    "buy_at_bulk",
    "choose_cable",
    "load_bab_instance",
    "route_on_tree",
    "KMedianSolution",
    "RootedTree",
    "TreeKMedian",
    "binarize",
    "kmedian",
    "kmedian_bruteforce",
    "kmedian_candidates",
    "kmedian_objective",
    "kmedian_tree_dp",
    "tree_kmedian_bruteforce",
    "ApproxMetric",
    "approx_metric",
]
