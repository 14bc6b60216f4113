"""随机连通图生成（测试与自带数据用）。"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import InvalidParameterError
from .model import WeightedGraph


def random_connected_graph(
    n: int,
    extra_edges: int,
    rng: np.random.Generator,
    max_weight: Optional[int] = None,
) -> WeightedGraph:
    """随机生成树 + extra_edges 条弦，整数权重均匀取自 [1, max_weight]（默认 n）。

    弦数超过补图边数时按补图边数截断。
    """
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    if extra_edges < 0:
        raise InvalidParameterError(f"extra_edges must be >= 0, got {extra_edges}")
    top = max_weight if max_weight is not None else max(n, 1)
    if top < 1:
        raise InvalidParameterError(f"max_weight must be >= 1, got {top}")

    perm = rng.permutation(n)
    pairs: set[tuple[int, int]] = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        a, b = int(perm[i]), int(perm[j])
        pairs.add((min(a, b), max(a, b)))

    room = n * (n - 1) // 2 - len(pairs)
    want = min(extra_edges, room)
    while want > 0:
        a, b = (int(x) for x in rng.integers(0, n, size=2))
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in pairs:
            continue
        pairs.add(key)
        want -= 1

    weights = rng.integers(1, top + 1, size=len(pairs))
    edges = [(u, v, float(w)) for (u, v), w in zip(sorted(pairs), weights)]
    return WeightedGraph.from_edges(n, edges, strict=True)
