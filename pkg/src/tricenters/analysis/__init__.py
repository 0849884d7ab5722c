"""Inequality graphs, equalities, best constants and table checks."""

from .best import BestConstant, ConstantReport, best_constant, verify_all_constants, verify_paper_constant
from .chain import ChainResult, LinkResult, check_chain
from .equalities import EqualityRecord, ExactRational, IntervalCoincidence, detect_equalities
from .graph import Certified, InequalityGraph, RefutedAbsent, Sampled, build_graph, transitive_reduction
from .table import BoundTable, BoundTableEntry, bound_table
from .tablecheck import RowCheck, check_table

__all__ = [
    "BestConstant",
    "BoundTable",
    "BoundTableEntry",
    "Certified",
    "ChainResult",
    "ConstantReport",
    "EqualityRecord",
    "ExactRational",
    "InequalityGraph",
    "IntervalCoincidence",
    "LinkResult",
    "RefutedAbsent",
    "RowCheck",
    "Sampled",
    "best_constant",
    "bound_table",
    "build_graph",
    "check_chain",
    "check_table",
    "detect_equalities",
    "transitive_reduction",
    "verify_all_constants",
    "verify_paper_constant",
]
