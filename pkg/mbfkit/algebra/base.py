"""代数接口：半环、零保持半模、过滤器，以及幂半模。

这里只定义协议（Protocol），具体实现见 minplus / maxmin / paths / boolean。
引擎只依赖这些协议：
- Semiring: oplus / odot / zero / one，外加 SLF 系数 lift_edge / lift_loop
- Semimodule: oplus / scale / bottom / sum（聚合）/ size
- Filter: project（代表元投影 r）
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Generic, Iterable, Protocol, Sequence, Tuple, TypeVar

S = TypeVar("S")
M = TypeVar("M")


class Semiring(Protocol[S]):
    """半环协议。

    (载体, oplus) 是以 zero 为单位元的交换半群，
    (载体, odot) 是以 one 为单位元的半群，odot 对 oplus 两侧分配，zero 零化。
    """

    name: str

    @property
    def zero(self) -> S: ...

    @property
    def one(self) -> S: ...

    def oplus(self, a: S, b: S) -> S: ...

    def odot(self, a: S, b: S) -> S: ...

    def lift_edge(self, v: int, w: int, weight: float) -> S:
        """邻接矩阵的非对角元 a_vw。"""
        ...

    def lift_loop(self, v: int) -> S:
        """邻接矩阵的对角元 a_vv（odot 单位元）。"""
        ...


class Semimodule(Protocol[S, M]):
    """半环上的零保持半模协议。"""

    semiring: Semiring[S]

    @property
    def bottom(self) -> M: ...

    def oplus(self, x: M, y: M) -> M: ...

    def scale(self, s: S, x: M) -> M: ...

    def sum(self, parts: Iterable[M]) -> M:
        """聚合任意多个元素（⊕ 的折叠，空折叠为 bottom）。"""
        ...

    def size(self, x: M) -> int:
        """非 ⊥ 项数 |x|。"""
        ...


class Filter(Protocol[M]):
    """代表元投影 r：幂等，且与 ⊕、⊙ 相容。"""

    def project(self, x: M) -> M: ...


class IdentityFilter:
    """恒等过滤器 r = id。"""

    def project(self, x: Any) -> Any:
        return x

    def __repr__(self) -> str:
        return "IdentityFilter()"


StateVector = Tuple[Any, ...]


@dataclass(frozen=True)
class PowerSemimodule(Generic[S, M]):
    """把半模 M 按坐标提升为 M^V。

    (x ⊕ y)_v = x_v ⊕ y_v，(s ⊙ x)_v = s ⊙ x_v，(r^V x)_v = r(x_v)。
    """

    module: Any
    n: int

    @property
    def bottom(self) -> StateVector:
        return tuple(self.module.bottom for _ in range(self.n))

    def oplus(self, x: Sequence[M], y: Sequence[M]) -> StateVector:
        return tuple(self.module.oplus(a, b) for a, b in zip(x, y))

    def scale(self, s: S, x: Sequence[M]) -> StateVector:
        return tuple(self.module.scale(s, a) for a in x)

    def sum(self, parts: Iterable[Sequence[M]]) -> StateVector:
        columns = list(zip(*parts))
        if not columns:
            return self.bottom
        return tuple(self.module.sum(col) for col in columns)

    def project(self, flt: Filter, x: Sequence[M]) -> StateVector:
        return tuple(flt.project(a) for a in x)

    def size(self, x: Sequence[M]) -> int:
        return sum(self.module.size(a) for a in x)
