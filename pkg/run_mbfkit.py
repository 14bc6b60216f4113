"""启动入口。

从仓库根目录运行：python run_mbfkit.py embed --input data/graph128.txt --seed 7
配置文件默认读取 config/mbfkit_settings.json（不存在时使用默认值），
也可以用 --config 指定。
"""

from __future__ import annotations

import sys
from pathlib import Path

# 允许不安装直接从仓库根目录运行
_THIS_DIR = Path(__file__).resolve().parent
if str(_THIS_DIR) not in sys.path:
    sys.path.insert(0, str(_THIS_DIR))

from mbfkit.cli import main

DEFAULT_CONFIG = _THIS_DIR / "config" / "mbfkit_settings.json"


def _with_default_config(argv: list[str]) -> list[str]:
    if "--config" in argv or not DEFAULT_CONFIG.exists() or not argv:
        return argv
    return argv + ["--config", str(DEFAULT_CONFIG)]


if __name__ == "__main__":
    sys.exit(main(_with_default_config(sys.argv[1:])))
