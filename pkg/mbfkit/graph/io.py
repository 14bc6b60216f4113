"""图文件读写。

支持两种格式：
- edgelist: 第一行 "n m"，随后 m 行 "u v w"；'#' 开头为注释
- json: {"n": ..., "edges": [[u, v, w], ...]}
文件名以 .gz 结尾时透明解压/压缩。
"""

from __future__ import annotations

import gzip
import json
import logging
import re
from pathlib import Path
from typing import IO, Optional, Union

from ..errors import GraphInvariantError, GraphParseError
from .model import WeightedGraph, check_weight_ratio

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FORMATS = ("edgelist", "json")

# "n m"
_HEADER_RE = re.compile(r"^\s*(\d+)\s+(\d+)\s*$")
# "u v w"，w 为十进制数（允许指数）
_EDGE_RE = re.compile(r"^\s*(\d+)\s+(\d+)\s+([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*$")


def _open_text(path: Path, mode: str) -> IO[str]:
    if path.suffix == ".gz":
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def detect_format(path: PathLike) -> str:
    """按扩展名猜格式（.json / .json.gz 为 json，其余为 edgelist）。"""
    name = Path(path).name.lower()
    if name.endswith(".gz"):
        name = name[:-3]
    return "json" if name.endswith(".json") else "edgelist"


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _parse_edgelist(stream: IO[str], path: str) -> tuple[int, list[tuple[int, int, float]]]:
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int, float]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if header is None:
            match = _HEADER_RE.match(line)
            if not match:
                raise GraphParseError(f"expected header 'n m', got {line!r}", path=path, line_no=line_no)
            header = (int(match.group(1)), int(match.group(2)))
            continue
        match = _EDGE_RE.match(line)
        if not match:
            raise GraphParseError(f"expected edge 'u v w', got {line!r}", path=path, line_no=line_no)
        edges.append((int(match.group(1)), int(match.group(2)), float(match.group(3))))
    if header is None:
        raise GraphParseError("missing header 'n m'", path=path)
    n, m = header
    if m != len(edges):
        raise GraphParseError(f"header announces {m} edges, found {len(edges)}", path=path)
    return n, edges


def _parse_json(stream: IO[str], path: str) -> tuple[int, list[tuple[int, int, float]]]:
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"invalid JSON: {e.msg}", path=path, line_no=e.lineno) from e
    if not isinstance(data, dict) or "n" not in data:
        raise GraphParseError("JSON graph needs an object with 'n' and 'edges'", path=path)
    try:
        n = int(data["n"])
        edges = [(int(u), int(v), float(w)) for u, v, w in data.get("edges", [])]
    except (TypeError, ValueError) as e:
        raise GraphParseError(f"malformed edge entry: {e}", path=path) from e
    return n, edges


def load_graph(
    path: PathLike,
    format: Optional[str] = None,
    *,
    strict: bool = False,
    weight_ratio_exponent: float = 4.0,
) -> WeightedGraph:
    """读取并校验图文件。

    参数:
        path: 文件路径（.gz 自动解压）
        format: "edgelist" / "json"，None 时按扩展名判断
        strict: 重边直接报错而不是合并
        weight_ratio_exponent: 权重比超过 n^c 时告警

    异常:
        GraphParseError: 文件不存在或格式错误
        GraphInvariantError: 自环、非正权、越界等
    """
    p = Path(path)
    fmt = format or detect_format(p)
    if fmt not in FORMATS:
        raise GraphParseError(f"unknown graph format {fmt!r}", path=str(p))
    if not p.exists():
        raise GraphParseError("file not found", path=str(p))

    try:
        with _open_text(p, "r") as stream:
            parser = _parse_json if fmt == "json" else _parse_edgelist
            n, edges = parser(stream, str(p))
    except (OSError, UnicodeDecodeError) as e:
        raise GraphParseError(f"cannot read file: {e}", path=str(p)) from e

    try:
        graph = WeightedGraph.from_edges(n, edges, strict=strict)
    except GraphInvariantError as e:
        raise type(e)(f"{p}: {e}") from e
    check_weight_ratio(graph, weight_ratio_exponent)
    logger.info("[graph] 已加载 %s：n=%s m=%s", p.name, graph.n, graph.m)
    return graph


def save_graph(g: WeightedGraph, path: PathLike, format: Optional[str] = None) -> None:
    """写出图文件，输出与 load_graph 互逆，且逐字节确定。"""
    p = Path(path)
    fmt = format or detect_format(p)
    p.parent.mkdir(parents=True, exist_ok=True)
    with _open_text(p, "w") as stream:
        if fmt == "json":
            payload = {"n": g.n, "edges": [[u, v, w] for u, v, w in g.edges()]}
            stream.write(json.dumps(payload, sort_keys=True))
            stream.write("\n")
        else:
            stream.write(f"{g.n} {g.m}\n")
            for u, v, w in g.edges():
                stream.write(f"{u} {v} {w!r}\n")
