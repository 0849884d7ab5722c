"""Exact and certified arithmetic foundation."""

from .evaluate import S_exact, check_triangle, eval_exact, eval_interval, sigma_exact
from .interval import DEFAULT_PRECISION, IntervalScalar
from .poly import Poly3
from .qfield import QSqrt3
from .roots import RootInterval, RootSelector, isolate_real_roots, isolate_root
from .slinear import S, SIGMA, SQRT3, SLinearPoly, slin_mul
from .tower import SurdValue

__all__ = [
    "DEFAULT_PRECISION",
    "IntervalScalar",
    "Poly3",
    "QSqrt3",
    "RootInterval",
    "RootSelector",
    "S",
    "SIGMA",
    "SQRT3",
    "SLinearPoly",
    "S_exact",
    "SurdValue",
    "check_triangle",
    "eval_exact",
    "eval_interval",
    "isolate_real_roots",
    "isolate_root",
    "sigma_exact",
    "slin_mul",
]
