"""代数层：半环、半模、过滤器。

- base: 协议定义、恒等过滤器、幂半模 M^V
- minplus: S_min,+ 与距离映射 D
- maxmin: S_max,min 与宽度映射 W
- paths: 全路径半环 P_min,+
- boolean: 布尔半环与可达集合
"""

from .base import Filter, IdentityFilter, PowerSemimodule, Semimodule, Semiring, StateVector
from .boolean import BOOLEAN, EMPTY_REACH, REACH_SETS, BooleanSemiring, ReachSet, ReachSetModule
from .maxmin import (
    MAX_MIN,
    WIDEST_BOTTOM,
    WIDEST_MAPS,
    MaxMinSemiring,
    WidestMap,
    WidestMapModule,
    maxmin_odot,
    maxmin_oplus,
    wmap_scale,
)
from .minplus import (
    BOTTOM,
    DISTANCE_MAPS,
    INF,
    MIN_PLUS,
    DistanceMap,
    DistanceMapModule,
    MinPlusSemiring,
    dmap_oplus,
    dmap_scale,
    minplus_odot,
    minplus_oplus,
    unit_map,
)
from .paths import EMPTY_PATHS, PathSemiring, PathSet, PathSetModule, pathset_odot, pathset_oplus

__all__ = [
    "Filter",
    "IdentityFilter",
    "PowerSemimodule",
    "Semimodule",
    "Semiring",
    "StateVector",
    "BOOLEAN",
    "EMPTY_REACH",
    "REACH_SETS",
    "BooleanSemiring",
    "ReachSet",
    "ReachSetModule",
    "MAX_MIN",
    "WIDEST_BOTTOM",
    "WIDEST_MAPS",
    "MaxMinSemiring",
    "WidestMap",
    "WidestMapModule",
    "maxmin_odot",
    "maxmin_oplus",
    "wmap_scale",
    "BOTTOM",
    "DISTANCE_MAPS",
    "INF",
    "MIN_PLUS",
    "DistanceMap",
    "DistanceMapModule",
    "MinPlusSemiring",
    "dmap_oplus",
    "dmap_scale",
    "minplus_odot",
    "minplus_oplus",
    "unit_map",
    "EMPTY_PATHS",
    "PathSemiring",
    "PathSet",
    "PathSetModule",
    "pathset_odot",
    "pathset_oplus",
]
