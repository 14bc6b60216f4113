"""模拟图 H：层级采样、边权定义与不显式构造 H 的预言机。"""

from .levels import LevelAssignment, sample_levels
from .oracle import (
    DEFAULT_CAP_CONST,
    IterationTrace,
    OracleRun,
    OracleTrace,
    iteration_cap,
    oracle_iterate,
    oracle_run,
    trace_h_path,
)
from .simulated import (
    SimulatedGraphH,
    check_level_monotonicity,
    default_eps_hat,
    h_edge_weight,
    level_stretch,
    materialize_h,
)

__all__ = [
    "LevelAssignment",
    "sample_levels",
    "DEFAULT_CAP_CONST",
    "IterationTrace",
    "OracleRun",
    "OracleTrace",
    "iteration_cap",
    "oracle_iterate",
    "oracle_run",
    "trace_h_path",
    "SimulatedGraphH",
    "check_level_monotonicity",
    "default_eps_hat",
    "h_edge_weight",
    "level_stretch",
    "materialize_h",
]
