"""Certified proofs, refutations and best-constant brackets for distance ratios."""

from .certificate import BoundCertificate, Counterexample, ReplayReport, replay
from .constants import Constant, QuadraticConstant, RootConstant, parse_constant
from .objective import RatioObjective, RatioProblem, compile_ratio
from .verify import (
    RatioBracket,
    WitnessFamily,
    inf_ratio,
    refute_positive_lower_bound,
    sup_ratio,
    verify_inequality,
)

__all__ = [
    "BoundCertificate",
    "Constant",
    "Counterexample",
    "QuadraticConstant",
    "RatioBracket",
    "RatioObjective",
    "RatioProblem",
    "ReplayReport",
    "RootConstant",
    "WitnessFamily",
    "compile_ratio",
    "inf_ratio",
    "parse_constant",
    "refute_positive_lower_bound",
    "replay",
    "sup_ratio",
    "verify_inequality",
]
