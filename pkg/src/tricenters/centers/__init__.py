"""Center catalog, normalized barycentrics and center-to-center distances."""

from .catalog import INDICES, CenterDef, catalog, center, coordinate_sum, coordinate_triple, first_coordinate
from .oracle import cartesian_oracle, oracle_distance
from .points import (
    NormalizedPoint,
    PointTable,
    distance_numerator,
    distance_squared,
    distance_squared_symbolic,
    midpoint_check,
    normalized_barycentric,
)

__all__ = [
    "INDICES",
    "CenterDef",
    "NormalizedPoint",
    "PointTable",
    "cartesian_oracle",
    "catalog",
    "center",
    "coordinate_sum",
    "coordinate_triple",
    "distance_numerator",
    "distance_squared",
    "distance_squared_symbolic",
    "first_coordinate",
    "midpoint_check",
    "normalized_barycentric",
    "oracle_distance",
]
