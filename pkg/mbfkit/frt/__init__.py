"""FRT 树嵌入：LE 列表、建树、路径还原与伸缩率统计。"""

from .le import (
    LeFilter,
    LeList,
    LeListStats,
    RandomOrder,
    harmonic,
    le_algorithm,
    le_filter,
    le_list_stats,
    sample_order,
    to_le_list,
    validate_le_list,
)
from .paths import reconstruct_path
from .pipeline import EmbedConfig, EmbedContext, LeRun, build_context, compute_le_lists, sample_tree
from .stretch import StretchReport, distance_matrix, stretch_report, tree_distance_matrix
from .tree import FrtTree, TreeNode, build_frt_tree, le_lists_to_jsonl, tree_distance, tree_edges, tree_to_tsv

__all__ = [
    "LeFilter",
    "LeList",
    "LeListStats",
    "RandomOrder",
    "harmonic",
    "le_algorithm",
    "le_filter",
    "le_list_stats",
    "sample_order",
    "to_le_list",
    "validate_le_list",
    "reconstruct_path",
    "EmbedConfig",
    "EmbedContext",
    "LeRun",
    "build_context",
    "compute_le_lists",
    "sample_tree",
    "StretchReport",
    "distance_matrix",
    "stretch_report",
    "tree_distance_matrix",
    "FrtTree",
    "TreeNode",
    "build_frt_tree",
    "le_lists_to_jsonl",
    "tree_distance",
    "tree_edges",
    "tree_to_tsv",
]
