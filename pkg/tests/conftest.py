from __future__ import annotations

import sys
from pathlib import Path

import pytest

# 允许不安装直接在仓库根目录运行 pytest
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from mbfkit.graph import WeightedGraph, random_connected_graph  # noqa: E402
from mbfkit.rng import stream  # noqa: E402

DATA_DIR = ROOT / "data"


def make_graph(n: int, seed: int, extra: int | None = None, max_weight: int | None = None) -> WeightedGraph:
    """整数权重的随机连通图；同一 (n, seed) 总是同一张图。"""
    return random_connected_graph(n, n if extra is None else extra, stream(seed, "test-graph", n), max_weight)


@pytest.fixture
def path3() -> WeightedGraph:
    # 0 -1- 1 -2- 2
    return WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 2.0)])


@pytest.fixture
def triangle() -> WeightedGraph:
    return WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)])


@pytest.fixture
def square() -> WeightedGraph:
    # 0-1-2-3-0 外加对角线 0-2
    return WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0), (0, 2, 3.0)])


@pytest.fixture
def small_graphs() -> list[WeightedGraph]:
    return [make_graph(n, seed) for seed, n in enumerate((8, 11, 16, 20, 24))]


@pytest.fixture
def graph_file(tmp_path: Path, path3: WeightedGraph) -> Path:
    target = tmp_path / "path3.txt"
    target.write_text("3 2\n0 1 1.0\n1 2 2.0\n", encoding="utf-8")
    return target
