"""稀疏向量基类。

DistanceMap / WidestMap / PathSet 都是“键 -> 值”的稀疏向量：
缺省值（ABSENT）不存储，⊕ 是逐项取“更好”的值。
项按键排序保存，⊕ 因此是线性归并；构造后不可变。
"""

from __future__ import annotations

import math
from typing import Any, ClassVar, Hashable, Iterable, Iterator, Mapping, Tuple, TypeVar, Union

K = TypeVar("K", bound=Hashable)
T = TypeVar("T", bound="SparseMap")

EntriesLike = Union[Mapping[Any, float], Iterable[Tuple[Any, float]]]


class SparseMap:
    """排序、不可变的稀疏向量。

    子类需要给出：
    - ABSENT: 缺省值（不存储）
    - _better(a, b): a 是否严格优于 b
    - _check_key(key): 键合法性校验
    """

    ABSENT: ClassVar[float] = math.inf
    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: EntriesLike = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        merged: dict[Any, float] = {}
        for key, value in items:
            value = float(value)
            if math.isnan(value):
                raise ValueError(f"NaN value for {key!r}")
            self._check_value(value)
            key = self._check_key(key)
            if value == self.ABSENT:
                continue
            old = merged.get(key)
            if old is None or self._better(value, old):
                merged[key] = value
        self._entries = {k: merged[k] for k in sorted(merged)}
        self._hash = None

    @classmethod
    def _trusted(cls: type[T], entries: dict[Any, float]) -> T:
        """内部构造：调用方保证已排序、无缺省值。"""
        obj = cls.__new__(cls)
        obj._entries = entries
        obj._hash = None
        return obj

    # ---- 子类钩子 ----

    @staticmethod
    def _better(a: float, b: float) -> bool:
        return a < b

    @staticmethod
    def _check_key(key: Any) -> Any:
        return key

    @staticmethod
    def _check_value(value: float) -> None:
        if value < 0:
            raise ValueError(f"negative value {value}")

    # ---- 只读访问 ----

    def get(self, key: Any, default: Any = None) -> float:
        if default is None:
            default = self.ABSENT
        return self._entries.get(key, default)

    def __getitem__(self, key: Any) -> float:
        return self._entries.get(key, self.ABSENT)

    def __contains__(self, key: object) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[Any]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def keys(self):
        return self._entries.keys()

    def items(self):
        return self._entries.items()

    def values(self):
        return self._entries.values()

    def to_dict(self) -> dict[Any, float]:
        return dict(self._entries)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._entries == other._entries  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._entries.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v!r}" for k, v in self._entries.items())
        return f"{type(self).__name__}({{{body}}})"

    # ---- 半模运算 ----

    def merge(self: T, other: T) -> T:
        """逐项取更好的值（两个有序列表的线性归并）。"""
        if not other._entries:
            return self
        if not self._entries:
            return other
        a = list(self._entries.items())
        b = list(other._entries.items())
        out: dict[Any, float] = {}
        i = j = 0
        better = self._better
        while i < len(a) and j < len(b):
            ka, va = a[i]
            kb, vb = b[j]
            if ka == kb:
                out[ka] = vb if better(vb, va) else va
                i += 1
                j += 1
            elif ka < kb:
                out[ka] = va
                i += 1
            else:
                out[kb] = vb
                j += 1
        for ka, va in a[i:]:
            out[ka] = va
        for kb, vb in b[j:]:
            out[kb] = vb
        return type(self)._trusted(out)

    @classmethod
    def aggregate(cls: type[T], parts: Iterable[T]) -> T:
        """⊕ 任意多个向量：拼接、按 (键, 值优劣) 排序、去重保留最优。"""
        pairs: list[tuple[Any, float]] = []
        for part in parts:
            pairs.extend(part._entries.items())
        if not pairs:
            return cls._trusted({})
        pairs.sort(key=cls._aggregate_key)
        out: dict[Any, float] = {}
        for key, value in pairs:
            if key not in out:
                out[key] = value
        return cls._trusted(out)

    @classmethod
    def _aggregate_key(cls, pair: tuple[Any, float]) -> tuple[Any, float]:
        return (pair[0], pair[1])
