"""MBF 类算法执行引擎与具体实例。"""

from .core import (
    AdjacencyOperator,
    MbfAlgorithm,
    MbfRun,
    aggregate,
    mbf_run,
    mbf_step,
    slf_apply,
    slf_apply_traced,
)
from .filters import KsdpFilter, SourceDetectionFilter, ksdp_filter, source_detection_filter
from .instances import (
    DEFAULT_PATH_CAP,
    apsp,
    apwp,
    connectivity,
    fire,
    hop_apsp,
    kdsdp,
    ksdp,
    kssp,
    mssp,
    mswp,
    source_detection,
    sssp,
    sswp,
)

__all__ = [
    "AdjacencyOperator",
    "MbfAlgorithm",
    "MbfRun",
    "aggregate",
    "mbf_run",
    "mbf_step",
    "slf_apply",
    "slf_apply_traced",
    "KsdpFilter",
    "SourceDetectionFilter",
    "ksdp_filter",
    "source_detection_filter",
    "DEFAULT_PATH_CAP",
    "apsp",
    "apwp",
    "connectivity",
    "fire",
    "hop_apsp",
    "kdsdp",
    "ksdp",
    "kssp",
    "mssp",
    "mswp",
    "source_detection",
    "sssp",
    "sswp",
]
