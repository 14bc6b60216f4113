"""日志配置模块。

统一配置项目日志，使用 logger 而非 print。
库代码只调用 logging.getLogger(__name__)，由入口调用 setup_logger。
"""

import logging
import sys

# 日志格式
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logger(level: int = logging.INFO) -> logging.Logger:
    """初始化日志配置。

    参数:
        level: 日志级别，默认 INFO

    返回:
        已配置的根 logger
    """
    root = logging.getLogger()
    root.setLevel(level)

    # 输出到 stderr，stdout 留给结果
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))

    # 避免重复添加处理器
    if not root.handlers:
        root.addHandler(handler)
    else:
        for existing in root.handlers:
            existing.setLevel(level)

    return root


def level_from_name(name: str) -> int:
    """把 "DEBUG"/"info" 之类的名字转换成 logging 级别。"""
    return getattr(logging, (name or "INFO").upper().strip(), logging.INFO)


def get_logger(name: str) -> logging.Logger:
    """获取指定名称的 logger。"""
    return logging.getLogger(name)
