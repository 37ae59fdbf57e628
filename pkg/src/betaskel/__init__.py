"""Beta-skeleton proximity graphs under L1/Linf metrics.

Public surface: metric predicates (geometry), per-pair minimal lens
enumeration (lenses), the extended-coordinate range index (rangeindex),
graph builders (skeleton), and point/graph file formats (pointio).
"""

from __future__ import annotations

from .errors import (
    InputError,
    InternalError,
    NestingViolation,
    SkelError,
    UnsupportedError,
)
from .geometry import (
    CORE,
    EPS,
    Arm,
    Direction,
    Metric,
    Point,
    PointSet,
    cross_arms,
    cross_directions,
    dist,
    in_cross,
    in_shortest_path_set,
    midpoint,
    sphere_union_decomposition_check,
)
from .lenses import (
    CaseProfile,
    Lens,
    Mode,
    Regime,
    Variant,
    asymmetric_candidates,
    case_profile,
    equidistant_candidates,
    minimal_lenses,
    point_in_lens,
    regime_of,
)

__all__ = [
    "CORE",
    "EPS",
    "Arm",
    "CaseProfile",
    "Direction",
    "InputError",
    "InternalError",
    "Lens",
    "Metric",
    "Mode",
    "NestingViolation",
    "Point",
    "PointSet",
    "Regime",
    "SkelError",
    "UnsupportedError",
    "Variant",
    "asymmetric_candidates",
    "case_profile",
    "cross_arms",
    "cross_directions",
    "dist",
    "equidistant_candidates",
    "in_cross",
    "in_shortest_path_set",
    "midpoint",
    "minimal_lenses",
    "point_in_lens",
    "regime_of",
    "sphere_union_decomposition_check",
]
