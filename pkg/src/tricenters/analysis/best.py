"""Best constants for distance ratios and checks of the named root constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import inf
from typing import List, Optional, Tuple

from ..certify.constants import Constant, RootConstant
from ..certify.objective import RatioProblem
from ..certify.verify import RatioBracket, inf_ratio, sup_ratio
from ..config import DEFAULT, RunConfig
from .table import bound_table

SIDES = {"min": "inf", "max": "sup", "inf": "inf", "sup": "sup"}
AGREEMENT = Fraction(1, 10 ** 9)


@dataclass
class BestConstant:
    bracket: RatioBracket
    matches: List[Tuple[str, Constant]] = field(default_factory=list)

    @property
    def match(self) -> Optional[str]:
        """The unique matching closed form, if there is exactly one."""
        return self.matches[0][0] if len(self.matches) == 1 else None

    @property
    def unbounded(self) -> bool:
        return self.bracket.lower == inf

    def as_dict(self) -> dict:
        out = self.bracket.as_dict()
        out["matches"] = [text for text, _ in self.matches]
        return out


def match_constants(lower: float, upper: float) -> List[Tuple[str, Constant]]:
    """Table constants whose exact value lies in [lower, upper]."""
    if lower == inf:
        return []
    lo, hi = Fraction(lower), Fraction(upper)
    table = bound_table()
    pool = dict(table.exact_constants())
    for name, k in table.constants.items():
        pool.setdefault(name, k)
    return [(text, k) for text, k in pool.items() if k.inside(lo, hi)]


def best_constant(n: int, i: int, j: int, side: str = "max", tolerance: float = 1e-6,
                  config: RunConfig = DEFAULT) -> BestConstant:
    """Bracket sup (``max``) or inf (``min``) of D(n,i)/D(n,j) and name it if possible."""
    try:
        which = SIDES[side]
    except KeyError:
        raise ValueError("side must be 'min' or 'max'") from None
    problem = RatioProblem(n, i, j)
    fn = sup_ratio if which == "sup" else inf_ratio
    br = fn(problem, tolerance, config)
    return BestConstant(br, match_constants(br.lower, br.upper))


@dataclass
class ConstantReport:
    name: str
    polynomial: Tuple[int, ...]
    selector: str
    lower: Fraction
    upper: Fraction
    printed: str
    agree: bool
    # independently optimized ratio, for constants with a known defining ratio
    optimized: Optional[RatioBracket] = None
    note: str = ""

    @property
    def flagged(self) -> bool:
        return not self.agree

    def as_dict(self) -> dict:
        out = {"name": self.name, "polynomial": list(self.polynomial), "selector": self.selector,
               "lower": f"{float(self.lower):.15g}", "upper": f"{float(self.upper):.15g}",
               "printed": self.printed, "agree": self.agree}
        if self.optimized is not None:
            out["optimized"] = self.optimized.as_dict()
        if self.note:
            out["note"] = self.note
        return out


# constants whose printed decimal is cross-checked against an optimized ratio
CROSS_CHECKS = {"C10": (10, 5, 6, "min")}


def verify_constant(name: str, k: RootConstant, printed: str) -> ConstantReport:
    r = k.interval(Fraction(1, 2 ** 80))
    p = Fraction(printed)
    # the printed decimal agrees when some point of the enclosure is within 1e-9
    agree = r.lo - AGREEMENT <= p <= r.hi + AGREEMENT
    return ConstantReport(name, k.coeffs, k.selector, r.lo, r.hi, printed, agree)


def verify_paper_constant(name: str, config: RunConfig = DEFAULT, cross_check: bool = True) -> ConstantReport:
    """Isolate a named root constant and compare it with its printed decimal."""
    table = bound_table()
    if name not in table.constants:
        raise KeyError(f"unknown constant {name!r}")
    rep = verify_constant(name, table.constants[name], table.approximations[name])
    if cross_check and name in CROSS_CHECKS:
        n, i, j, side = CROSS_CHECKS[name]
        best = best_constant(n, i, j, side, config=config)
        rep.optimized = best.bracket
        root_ok = best.bracket.lower <= float(rep.upper) and float(rep.lower) <= best.bracket.upper
        printed_ok = best.bracket.contains(Fraction(rep.printed))
        rep.note = (f"optimized {SIDES[side]} of D({n},{i})/D({n},{j}) lies in "
                    f"[{best.bracket.lower:.10f}, {best.bracket.upper:.10f}]; "
                    f"{'matches' if root_ok else 'differs from'} the polynomial root, "
                    f"{'matches' if printed_ok else 'differs from'} the printed decimal")
    if not rep.agree:
        rep.note = ("printed decimal disagrees with the defining polynomial; " + rep.note).rstrip("; ")
    return rep


def verify_all_constants(config: RunConfig = DEFAULT, cross_check: bool = True) -> List[ConstantReport]:
    names = sorted(bound_table().constants, key=lambda s: int(s[1:]))
    return [verify_paper_constant(name, config, cross_check) for name in names]
