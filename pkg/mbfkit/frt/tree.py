"""由 LE 列表构造 FRT 树。

对每个节点 v 和每个尺度 i，v_i 是距离 v 不超过 β·2^{i-1} 的节点中排名最小者
（就是 LE 列表里最后一个距离 ≤ β·2^{i-1} 的项）。树节点是后缀 (v_i, ..., v_k)：
- 叶子层 i0 = ⌈log₂(ω_min/β)⌉，此时 v_{i0} = v
- 根层 k = ⌈log₂(D/β)⌉ + 1，D 为所有列表中的最大距离，此时 v_k 是全局排名最小的节点
- 第 i 层到第 i+1 层的边权为 β·2^i
这样任意两叶子 u ≠ w 的树距离 ≥ dist_H(u, w)。
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Sequence, Union

from ..errors import InvalidParameterError, MalformedLeListError
from .le import LeList, RandomOrder, validate_le_list

ListsLike = Union[Sequence[LeList], Mapping[int, LeList]]


@dataclass(frozen=True)
class TreeNode:
    """树节点；level 从叶子层 0 开始计，weight 是到父节点的边权（根为 0）。"""

    id: int
    level: int
    key: tuple[int, ...]
    parent: int
    weight: float
    rep: int

    @property
    def lead(self) -> int:
        """后缀的首节点 v_i。"""
        return self.key[0]


@dataclass
class FrtTree:
    nodes: tuple[TreeNode, ...]
    leaf_of: dict[int, int]
    beta: float
    base_index: int
    root: int = 0
    children: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.children:
            for node in self.nodes:
                if node.parent >= 0:
                    self.children.setdefault(node.parent, []).append(node.id)

    @property
    def depth(self) -> int:
        return self.nodes[self.root].level

    def node(self, node_id: int) -> TreeNode:
        return self.nodes[node_id]

    def scale(self, level: int) -> float:
        """第 level 层（相对叶子）到上一层的边权 β·2^{base+level}。"""
        return math.ldexp(self.beta, self.base_index + level)


def _as_mapping(lists: ListsLike) -> dict[int, LeList]:
    if isinstance(lists, Mapping):
        return {int(v): lst for v, lst in lists.items() if lst}
    return {v: lst for v, lst in enumerate(lists) if lst}


def _center(lst: LeList, dists: list[float], radius: float) -> int:
    """列表中距离 ≤ radius 的最后一项（排名最小者）。"""
    pos = bisect.bisect_right(dists, radius)
    if pos == 0:
        raise MalformedLeListError(f"no entry within radius {radius}")
    return lst[pos - 1][1]


def build_frt_tree(
    lists: ListsLike,
    order: RandomOrder,
    w_min: float,
    w_max: Optional[float] = None,
) -> FrtTree:
    """由 LE 列表构造 FRT 树。

    参数:
        lists: 节点 -> LE 列表（只对给出列表的节点建叶子）
        order: 随机全序与 β
        w_min: 非零距离的下界（取图的最小边权）
        w_max: 距离尺度上界；None 时取列表中的最大距离

    异常:
        MalformedLeListError: 列表违反支配约束或不含自身
    """
    if w_min <= 0:
        raise InvalidParameterError(f"w_min must be > 0, got {w_min}")
    table = _as_mapping(lists)
    if not table:
        raise InvalidParameterError("no LE lists to build a tree from")
    for v, lst in table.items():
        validate_le_list(lst, order)
        if lst[0] != (0.0, v):
            raise MalformedLeListError(f"list of node {v} does not start with (0, {v})")

    beta = order.beta
    top = max(lst[-1][0] for lst in table.values())
    if w_max is not None:
        top = max(top, w_max)
    i0 = math.ceil(math.log2(w_min / beta))
    ik = i0 if top <= 0 else max(i0, math.ceil(math.log2(top / beta)) + 1)
    levels = ik - i0

    # 每个节点的序列 (v_{i0}, ..., v_{ik})
    sequences: dict[int, tuple[int, ...]] = {}
    for v, lst in table.items():
        dists = [d for d, _ in lst]
        seq = [v]
        for i in range(i0 + 1, ik + 1):
            seq.append(_center(lst, dists, math.ldexp(beta, i - 1)))
        sequences[v] = tuple(seq)

    roots = {seq[-1] for seq in sequences.values()}
    if len(roots) != 1:
        raise MalformedLeListError(f"lists disagree on the root: {sorted(roots)}")

    # 后缀去重：自根向下编号，同层按 key 排序，保证确定性
    by_level: list[dict[tuple[int, ...], int]] = [dict() for _ in range(levels + 1)]
    for v in sorted(sequences):
        seq = sequences[v]
        for level in range(levels + 1):
            key = seq[level:]
            rep = by_level[level].get(key)
            if rep is None or v < rep:
                by_level[level][key] = v

    ids: dict[tuple[int, tuple[int, ...]], int] = {}
    ordered: list[tuple[int, tuple[int, ...], int]] = []
    for level in range(levels, -1, -1):
        for key in sorted(by_level[level]):
            ids[(level, key)] = len(ordered)
            ordered.append((level, key, by_level[level][key]))

    nodes = []
    for node_id, (level, key, rep) in enumerate(ordered):
        if level == levels:
            parent, weight = -1, 0.0
        else:
            parent = ids[(level + 1, key[1:])]
            weight = math.ldexp(beta, i0 + level)
        nodes.append(TreeNode(id=node_id, level=level, key=key, parent=parent, weight=weight, rep=rep))

    leaf_of = {v: ids[(0, seq)] for v, seq in sequences.items()}
    return FrtTree(nodes=tuple(nodes), leaf_of=leaf_of, beta=beta, base_index=i0)


def tree_edges(t: FrtTree) -> Iterator[tuple[int, int, float]]:
    """(子节点, 父节点, 边权)，按子节点编号。"""
    for node in t.nodes:
        if node.parent >= 0:
            yield (node.id, node.parent, node.weight)


def _leaf(t: FrtTree, v: int) -> int:
    leaf = t.leaf_of.get(v)
    if leaf is None:
        raise InvalidParameterError(f"node {v} is not a leaf of the tree")
    return leaf


def tree_distance(t: FrtTree, v: int, w: int) -> float:
    """叶子之间树路径上的边权和。"""
    a, b = _leaf(t, v), _leaf(t, w)
    total = 0.0
    while a != b:
        # 所有叶子同层，两边同步上行
        total += t.nodes[a].weight + t.nodes[b].weight
        a, b = t.nodes[a].parent, t.nodes[b].parent
    return total


def tree_to_tsv(t: FrtTree) -> str:
    """父数组：node, parent, weight, leaf（非叶子为 -1）。"""
    graph_leaf = {leaf: v for v, leaf in t.leaf_of.items()}
    lines = ["node\tparent\tweight\tleaf"]
    for node in t.nodes:
        lines.append(f"{node.id}\t{node.parent}\t{node.weight!r}\t{graph_leaf.get(node.id, -1)}")
    return "\n".join(lines) + "\n"


def le_lists_to_jsonl(lists: ListsLike) -> str:
    """每行 {"node": id, "list": [[dist, id], ...]}。"""
    table = lists.items() if isinstance(lists, Mapping) else enumerate(lists)
    rows = [
        json.dumps({"node": int(v), "list": [[d, u] for d, u in lst]}, sort_keys=True)
        for v, lst in sorted(table, key=lambda item: item[0])
        if lst
    ]
    return "\n".join(rows) + ("\n" if rows else "")
