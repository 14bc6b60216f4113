"""图模型、文件读写与精确参考实现。"""

from .generators import random_connected_graph
from .io import FORMATS, detect_format, load_graph, save_graph
from .model import (
    WeightedGraph,
    check_weight_ratio,
    is_connected,
    require_connected,
    weight_range,
)
from .oracles import (
    all_pairs_dijkstra,
    dijkstra,
    enumerate_paths,
    hop_limited_distances,
    min_hop_parents,
    min_hop_shortest_path,
    path_weight,
    reachable_within,
    shortest_path_diameter,
    walk_parents,
    widest_distances,
)

__all__ = [
    "random_connected_graph",
    "FORMATS",
    "detect_format",
    "load_graph",
    "save_graph",
    "WeightedGraph",
    "check_weight_ratio",
    "is_connected",
    "require_connected",
    "weight_range",
    "all_pairs_dijkstra",
    "dijkstra",
    "enumerate_paths",
    "hop_limited_distances",
    "min_hop_parents",
    "min_hop_shortest_path",
    "path_weight",
    "reachable_within",
    "shortest_path_diameter",
    "walk_parents",
    "widest_distances",
]
