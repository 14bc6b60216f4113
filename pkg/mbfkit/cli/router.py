"""命令路由与上下文。

关键概念：
- RunContext：一次命令执行的上下文，包含解析后的参数、配置、服务容器、输出流
- Command：名字 + 参数声明(configure) + 执行(run) 的可插拔单元
dispatch 负责解析命令行、加载配置、初始化日志，并把 MbfKitError 翻译成退出码。
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Protocol, Sequence, TextIO

from ..errors import InvalidParameterError, MbfKitError, NonConvergenceError
from ..graph import WeightedGraph, load_graph
from ..logging import level_from_name, setup_logger
from ..settings import KitSettings, load_settings, with_overrides
from .services import KitServices

logger = logging.getLogger(__name__)

PROG = "mbfkit"


@dataclass
class RunContext:
    args: argparse.Namespace
    settings: KitSettings
    services: KitServices
    stdout: TextIO = field(default_factory=lambda: sys.stdout)

    def load_input(self) -> WeightedGraph:
        """读取 --input 指定的图。"""
        if not self.args.input:
            raise InvalidParameterError("--input is required for this command")
        gs = self.settings.graph
        return load_graph(
            self.args.input,
            getattr(self.args, "graph_format", None),
            strict=gs.strict,
            weight_ratio_exponent=gs.weight_ratio_exponent,
        )


class Command(Protocol):
    """可插拔命令协议：configure 声明参数，run 执行并返回退出码。"""

    name: str
    help: str

    def configure(self, parser: argparse.ArgumentParser) -> None: ...

    def run(self, ctx: RunContext) -> int: ...


ConfigureFunc = Callable[[argparse.ArgumentParser], None]
RunFunc = Callable[[RunContext], Optional[int]]


@dataclass
class FunctionCommand:
    """把两个函数(configure/run) 包装成 Command。"""

    name: str
    help: str
    _configure: ConfigureFunc
    _run: RunFunc

    def configure(self, parser: argparse.ArgumentParser) -> None:
        self._configure(parser)

    def run(self, ctx: RunContext) -> int:
        code = self._run(ctx)
        return 0 if code is None else code


def positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def nonnegative_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {raw!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _common_options() -> argparse.ArgumentParser:
    """所有子命令共享的参数。"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON 配置文件（缺失时使用默认值）")
    common.add_argument("--log-level", dest="log_level", help="DEBUG / INFO / WARNING / ERROR")
    common.add_argument("--input", help="图文件（edgelist 或 json，.gz 自动解压）")
    common.add_argument("--graph-format", dest="graph_format", choices=("edgelist", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=positive_int)
    common.add_argument("--output", help="输出路径；省略或 - 表示 stdout")
    common.add_argument("--format", dest="out_format", choices=("json", "tsv"), default="json")
    common.add_argument("--eps-hat", dest="eps_hat", type=nonnegative_float, help="H 的层级惩罚 ε̂")
    common.add_argument("--hopset", choices=("identity", "shortcut", "cluster-shortcut"))
    common.add_argument("--hopset-eps", dest="hopset_eps", type=nonnegative_float, help="hop set 校验容差")
    common.add_argument("--d", type=positive_int, help="hop set 的跳数上限")
    common.add_argument("--cap-const", dest="cap_const", type=positive_int, help="预言机迭代上限常数 c")
    common.add_argument("--samples", type=positive_int)
    return common


def build_parser(commands: Sequence[Command]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="MBF 类算法、模拟图 H 与 FRT 树嵌入")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options()
    for cmd in commands:
        child = sub.add_parser(cmd.name, help=cmd.help, parents=[common])
        cmd.configure(child)
    return parser


def settings_from_args(args: argparse.Namespace) -> KitSettings:
    """配置文件 + 环境变量，再用命令行覆盖。"""
    settings = load_settings(args.config)
    return with_overrides(
        settings,
        seed=args.seed,
        threads=args.threads,
        samples=args.samples,
        log_level=args.log_level.upper() if args.log_level else None,
        **{
            "hopset.strategy": args.hopset,
            "hopset.d": args.d,
            "hopset.eps_hat": args.hopset_eps,
            "oracle.eps_hat": args.eps_hat,
            "oracle.cap_const": args.cap_const,
        },
    )


def dispatch(commands: Iterable[Command], argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """解析命令行并执行对应命令，返回退出码。

    参数错误由 argparse 以 SystemExit(2) 结束。
    """
    commands = list(commands)
    by_name = {cmd.name: cmd for cmd in commands}
    args = build_parser(commands).parse_args(argv)

    settings = settings_from_args(args)
    setup_logger(level_from_name(settings.log_level))
    cmd = by_name[args.command]

    with KitServices.from_settings(settings) as services:
        ctx = RunContext(args=args, settings=settings, services=services, stdout=stdout or sys.stdout)
        try:
            return cmd.run(ctx)
        except NonConvergenceError as e:
            logger.error("[cli] %s 未收敛：%s", cmd.name, e)
            return e.exit_code
        except MbfKitError as e:
            logger.error("[cli] %s 失败：%s", cmd.name, e)
            return e.exit_code
