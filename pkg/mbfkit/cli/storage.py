"""结果写出。

所有输出逐字节确定：JSON 按键排序，浮点用 repr。
path 为 None 或 "-" 时写到 stdout。
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, TextIO, Union

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def dumps_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=True) + "\n"


def write_text(path: Optional[PathLike], text: str, stdout: Optional[TextIO] = None) -> None:
    if path is None or str(path) == "-":
        (stdout or sys.stdout).write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("[storage] 写出 %s（%s 字节）", target, len(text.encode("utf-8")))


def write_json(path: Optional[PathLike], data: Any, stdout: Optional[TextIO] = None) -> None:
    write_text(path, dumps_json(data), stdout)


def format_tsv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join(repr(x) if isinstance(x, float) else str(x) for x in row))
    return "\n".join(lines) + "\n"


def output_dir(path: Optional[PathLike]) -> Optional[Path]:
    """多文件输出的目录；None 表示只往 stdout 写汇总。"""
    if path is None or str(path) == "-":
        return None
    target = Path(path)
    target.mkdir(parents=True, exist_ok=True)
    return target
