"""把 FRT 树边还原成 G 中的路径。

树边 child → parent（child 在第 i 层，首节点 c；parent 首节点 p），
取 child 子树里的代表叶子 v：c 与 p 都在 v 的 LE 列表里，
dist_H(v, c) ≤ β·2^{i-1}，dist_H(v, p) ≤ β·2^i。
于是 c ⇝ v ⇝ p 这条游走的权重 ≤ 1.5·β·2^i ≤ 3·ω_T(e)：
- 两段 H 路径由预言机的前驱记录还原成 G′ 游走
- G′ 中的捷径边再按来源展开成 G 路径
c = p 时树边对应零长游走 [c]。
"""

from __future__ import annotations

from ..errors import InvalidParameterError, MissingTraceError
from ..hopset import AugmentedGraph, expand_walk
from ..simgraph import OracleTrace, trace_h_path
from .tree import FrtTree


def reconstruct_path(t: FrtTree, child: int, trace: OracleTrace | None, aug: AugmentedGraph) -> list[int]:
    """树边 (child, parent(child)) 对应的 G 游走，从 lead(child) 走到 lead(parent)。"""
    if trace is None:
        raise MissingTraceError("path reconstruction needs a recorded oracle trace")
    if not 0 <= child < len(t.nodes):
        raise InvalidParameterError(f"unknown tree node {child}")
    node = t.nodes[child]
    if node.parent < 0:
        raise InvalidParameterError("the root has no parent edge")
    parent = t.nodes[node.parent]
    if node.lead == parent.lead:
        return [node.lead]

    v = node.rep
    down = trace_h_path(trace, v, node.lead) if node.lead != v else [v]
    up = trace_h_path(trace, v, parent.lead) if parent.lead != v else [v]
    walk = list(reversed(down)) + up[1:]
    return expand_walk(aug, walk)
