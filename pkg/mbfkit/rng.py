"""随机数流。

所有随机性都来自同一个整数种子：按标签（"levels"、"order"、"beta"……）
派生互相独立的 numpy Generator。同样的 (seed, labels) 永远得到同样的流，
与线程数、调用顺序无关。
"""

from __future__ import annotations

import zlib
from typing import Union

import numpy as np

Label = Union[str, int]


def _label_key(label: Label) -> int:
    if isinstance(label, int):
        return label
    return zlib.crc32(label.encode("utf-8"))


def stream(seed: int, *labels: Label) -> np.random.Generator:
    """按 (seed, labels) 派生一个独立的随机流。"""
    key = tuple(_label_key(label) for label in labels)
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=key))


def derive_seed(seed: int, *labels: Label) -> int:
    """派生一个子种子（给需要整数种子的接口用）。"""
    return int(stream(seed, *labels).integers(0, 2**63 - 1))
