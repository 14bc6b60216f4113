"""异常定义。

所有库内异常都继承 MbfKitError，并带一个稳定的 exit_code，
CLI 捕获后直接用它作为进程退出码：
- 1: 输入解析失败（文件不存在、格式错误）
- 2: 不变量/参数/上限违例
- 3: 预言机在迭代上限内没有收敛
"""

from __future__ import annotations

from typing import Any, Optional


class MbfKitError(Exception):
    """库内异常基类。"""

    exit_code: int = 2


class GraphParseError(MbfKitError):
    """图文件无法读取或解析。"""

    exit_code = 1

    def __init__(self, message: str, *, path: Optional[str] = None, line_no: Optional[int] = None):
        self.path = path
        self.line_no = line_no
        where = ""
        if path is not None:
            where = f"{path}"
            if line_no is not None:
                where += f":{line_no}"
            where += ": "
        super().__init__(f"{where}{message}")


class GraphInvariantError(MbfKitError):
    """图违反不变量（自环、非正权、重边等）。"""


class DisconnectedGraphError(GraphInvariantError):
    """需要连通图的流程拿到了不连通的图。"""


class InvalidParameterError(MbfKitError):
    """调用参数不合法（k<0、源点越界等）。"""


class CapExceededError(MbfKitError):
    """超过配置的规模上限（实体化 H、枚举路径、kSDP 路径数等）。"""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class MalformedLeListError(MbfKitError):
    """LE 列表不满足支配关系约束。"""


class MissingTraceError(MbfKitError):
    """路径回溯所需的前驱记录缺失。"""


class NonConvergenceError(MbfKitError):
    """预言机迭代在上限内没有到达不动点。

    partial_state 保存最后一次迭代的状态，便于调用方诊断。
    """

    exit_code = 3

    def __init__(self, iterations: int, partial_state: Any = None):
        self.iterations = iterations
        self.partial_state = partial_state
        super().__init__(f"no fixpoint after {iterations} iterations")
