"""配置模块。

所有配置集中在 KitSettings 中，从 config/mbfkit_settings.json 加载。
嵌套的 HopsetSettings / OracleSettings / EngineSettings / GraphSettings /
KmedianSettings 分别对应各子模块的参数。

优先级：命令行参数 > 环境变量（MBFKIT_THREADS）> JSON 文件 > 默认值。
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

logger = logging.getLogger(__name__)

THREADS_ENV = "MBFKIT_THREADS"


@dataclass(frozen=True)
class HopsetSettings:
    """hop set 配置。"""
    strategy: str = "identity"  # identity | shortcut
    d: Optional[int] = None  # None 表示按 n 自动选择
    eps_hat: float = 0.0  # 校验容差
    hub_factor: float = 1.0  # 枢纽数 = hub_factor * ⌈√n·log n⌉


@dataclass(frozen=True)
class OracleSettings:
    """模拟图 H 与预言机配置。"""
    eps_hat: Optional[float] = None  # None 表示 1/⌈log₂ n⌉²
    cap_const: int = 8  # 迭代上限 = cap_const * ⌈log₂ n⌉²
    materialize_cap: int = 256
    verify_cap: int = 512
    pair_cap: int = 512
    table_cap: int = 4096


@dataclass(frozen=True)
class EngineSettings:
    """MBF 引擎配置。"""
    path_cap: int = 1_000_000  # kSDP 未过滤中间结果的路径数上限
    fixpoint_cap: Optional[int] = None  # None 表示 n


@dataclass(frozen=True)
class GraphSettings:
    """图加载配置。"""
    weight_ratio_exponent: float = 4.0  # ω_max/ω_min 超过 n^c 时告警
    strict: bool = False  # True 时重边直接报错


@dataclass(frozen=True)
class KmedianSettings:
    """k-median 候选采样配置。"""
    round_factor: float = 3.0  # 每轮采样 ⌈round_factor·k·ln n⌉ 个点


@dataclass(frozen=True)
class KitSettings:
    """运行时配置（从 JSON 加载）。"""
    seed: int = 0
    threads: int = 1
    samples: int = 1
    log_level: str = "INFO"

    hopset: HopsetSettings = field(default_factory=HopsetSettings)
    oracle: OracleSettings = field(default_factory=OracleSettings)
    engine: EngineSettings = field(default_factory=EngineSettings)
    graph: GraphSettings = field(default_factory=GraphSettings)
    kmedian: KmedianSettings = field(default_factory=KmedianSettings)


def _read_json_file(path: Path) -> dict[str, Any]:
    """读取 JSON 文件为 dict；文件不存在则返回空 dict。"""
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return {}
    except json.JSONDecodeError as e:
        logger.warning("[settings] 配置文件 %s 解析失败，使用默认值：%s", path, e)
        return {}
    return data if isinstance(data, dict) else {}


def _to_bool(value: Any, default: bool) -> bool:
    """把常见输入转换为布尔值。"""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return bool(value)
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in {"true", "1", "yes", "y", "on"}:
            return True
        if lowered in {"false", "0", "no", "n", "off"}:
            return False
    return default


def _section(config: dict[str, Any], key: str) -> dict[str, Any]:
    section = config.get(key, {})
    return section if isinstance(section, dict) else {}


def _picker(config: dict[str, Any]):
    """返回一组从 config 取值的小函数，取不到或类型错误时回退默认值。"""

    def pick(key: str, default: Any) -> Any:
        return config.get(key, default)

    def pick_int(key: str, default: Optional[int]) -> Optional[int]:
        try:
            val = config.get(key)
            return int(val) if val is not None else default
        except (TypeError, ValueError):
            return default

    def pick_float(key: str, default: Optional[float]) -> Optional[float]:
        try:
            val = config.get(key)
            return float(val) if val is not None else default
        except (TypeError, ValueError):
            return default

    def pick_bool(key: str, default: bool) -> bool:
        return _to_bool(config.get(key, default), default)

    return pick, pick_int, pick_float, pick_bool


def threads_from_env(default: int) -> int:
    """读取 MBFKIT_THREADS；非法值忽略。"""
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        logger.warning("[settings] 忽略非法的 %s=%r", THREADS_ENV, raw)
        return default


def load_settings(config_path: Optional[str] = None) -> KitSettings:
    """加载配置：从 JSON 配置文件读取，再叠加环境变量。"""
    config: dict[str, Any] = {}
    if config_path:
        config = _read_json_file(Path(config_path))

    pick, pick_int, pick_float, pick_bool = _picker(config)

    # hop set 配置
    h_pick, h_int, h_float, _ = _picker(_section(config, "hopset"))
    hopset = HopsetSettings(
        strategy=str(h_pick("strategy", HopsetSettings.strategy)).strip().lower(),
        d=h_int("d", None),
        eps_hat=max(0.0, h_float("eps_hat", HopsetSettings.eps_hat)),
        hub_factor=max(0.0, h_float("hub_factor", HopsetSettings.hub_factor)),
    )

    # 预言机配置
    _, o_int, o_float, _ = _picker(_section(config, "oracle"))
    oracle = OracleSettings(
        eps_hat=o_float("eps_hat", None),
        cap_const=max(1, o_int("cap_const", OracleSettings.cap_const)),
        materialize_cap=o_int("materialize_cap", OracleSettings.materialize_cap),
        verify_cap=o_int("verify_cap", OracleSettings.verify_cap),
        pair_cap=o_int("pair_cap", OracleSettings.pair_cap),
        table_cap=o_int("table_cap", OracleSettings.table_cap),
    )

    _, e_int, _, _ = _picker(_section(config, "engine"))
    engine = EngineSettings(
        path_cap=e_int("path_cap", EngineSettings.path_cap),
        fixpoint_cap=e_int("fixpoint_cap", None),
    )

    _, _, g_float, g_bool = _picker(_section(config, "graph"))
    graph = GraphSettings(
        weight_ratio_exponent=g_float("weight_ratio_exponent", GraphSettings.weight_ratio_exponent),
        strict=g_bool("strict", GraphSettings.strict),
    )

    _, _, k_float, _ = _picker(_section(config, "kmedian"))
    kmedian = KmedianSettings(
        round_factor=max(1.0, k_float("round_factor", KmedianSettings.round_factor)),
    )

    threads = threads_from_env(max(1, pick_int("threads", 1)))
    log_level = str(pick("log_level", "INFO")).upper().strip() or "INFO"

    return KitSettings(
        seed=pick_int("seed", 0),
        threads=threads,
        samples=max(1, pick_int("samples", 1)),
        log_level=log_level,
        hopset=hopset,
        oracle=oracle,
        engine=engine,
        graph=graph,
        kmedian=kmedian,
    )


def with_overrides(settings: KitSettings, **overrides: Any) -> KitSettings:
    """用命令行参数覆盖配置；值为 None 的键忽略。

    键名支持 "hopset.d" 这样的点号路径指向嵌套配置。
    """
    top: dict[str, Any] = {}
    nested: dict[str, dict[str, Any]] = {}
    for key, value in overrides.items():
        if value is None:
            continue
        if "." in key:
            section, name = key.split(".", 1)
            nested.setdefault(section, {})[name] = value
        else:
            top[key] = value

    for section, values in nested.items():
        top[section] = replace(getattr(settings, section), **values)
    return replace(settings, **top) if top else settings
