"""命令行前端。"""

from __future__ import annotations

import sys
from typing import Optional, Sequence

from .commands import build_commands, build_instance
from .router import Command, FunctionCommand, RunContext, build_parser, dispatch
from .services import KitServices


def main(argv: Optional[Sequence[str]] = None) -> int:
    return dispatch(build_commands(), argv)


def run() -> None:
    """console script 入口。"""
    sys.exit(main())


__all__ = [
    "build_commands",
    "build_instance",
    "Command",
    "FunctionCommand",
    "RunContext",
    "build_parser",
    "dispatch",
    "KitServices",
    "main",
    "run",
]
