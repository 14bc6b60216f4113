"""节点层级采样。

每个节点从 0 层开始，每层以 1/2 概率升一层，直到某一步没有节点升层。
等价地，各节点层级独立服从参数 1/2 的几何分布（从 0 计），Λ = 最大层级。
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParameterError
from ..rng import stream


@dataclass(frozen=True)
class LevelAssignment:
    level: tuple[int, ...]
    seed: int = 0

    @property
    def n(self) -> int:
        return len(self.level)

    @property
    def Lambda(self) -> int:
        return max(self.level)

    def edge_level(self, v: int, w: int) -> int:
        """level(v, w) = min(level(v), level(w))。"""
        return min(self.level[v], self.level[w])

    def nodes_at_least(self, lam: int) -> frozenset[int]:
        """V_λ：层级 ≥ λ 的节点。"""
        return frozenset(v for v, lv in enumerate(self.level) if lv >= lam)


def sample_levels(n: int, seed: int, sample: int = 0) -> LevelAssignment:
    """按种子采样 n 个节点的层级；同一 (seed, sample) 结果固定。"""
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")
    rng = stream(seed, "levels", sample)
    levels = rng.geometric(0.5, size=n) - 1
    return LevelAssignment(level=tuple(int(x) for x in levels), seed=seed)
