"""布尔半环与可达集合半模（连通性）。"""

from __future__ import annotations

from typing import FrozenSet, Iterable

ReachSet = FrozenSet[int]

EMPTY_REACH: ReachSet = frozenset()


class BooleanSemiring:
    """B = ({0,1}, ∨, ∧)。"""

    name = "boolean"

    @property
    def zero(self) -> bool:
        return False

    @property
    def one(self) -> bool:
        return True

    def oplus(self, a: bool, b: bool) -> bool:
        return a or b

    def odot(self, a: bool, b: bool) -> bool:
        return a and b

    def lift_edge(self, v: int, w: int, weight: float) -> bool:
        return True

    def lift_loop(self, v: int) -> bool:
        return True


BOOLEAN = BooleanSemiring()


class ReachSetModule:
    """B^V：x_v 是已到达节点的集合，⊕ = 并，scale(b, x) = x 或 ∅。"""

    semiring = BOOLEAN
    element_type = frozenset

    @property
    def bottom(self) -> ReachSet:
        return EMPTY_REACH

    def oplus(self, x: ReachSet, y: ReachSet) -> ReachSet:
        return x | y

    def scale(self, s: bool, x: ReachSet) -> ReachSet:
        return x if s else EMPTY_REACH

    def sum(self, parts: Iterable[ReachSet]) -> ReachSet:
        return frozenset().union(*parts)

    def size(self, x: ReachSet) -> int:
        return len(x)


REACH_SETS = ReachSetModule()
