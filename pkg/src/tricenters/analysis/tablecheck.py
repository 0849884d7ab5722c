"""Sampled soundness and tightness checks of the best-constant table."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf, sqrt
from typing import List, Optional, Sequence

import numpy as np

from ..certify.objective import RatioProblem, compile_ratio
from ..certify.verify import _limit_extremes
from ..config import DEFAULT, RunConfig
from .equalities import exact_identity_holds
from .sampling import SampleEvaluator, precise_d2
from .table import BoundTableEntry, bound_table
from .graph import sample_shapes

TOLERANCE = 1e-9
TIGHTNESS = 1e-3


@dataclass
class RowCheck:
    entry: BoundTableEntry
    samples: int
    violations: List[int]
    undefined: int
    min_ratio: float
    max_ratio: float
    exact_identity: Optional[bool] = None
    tight_lower: Optional[bool] = None
    tight_upper: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return not self.violations and self.exact_identity is not False

    @property
    def tight(self) -> bool:
        return self.tight_lower is not False and self.tight_upper is not False

    def as_dict(self) -> dict:
        e = self.entry
        out = {"row": [e.n, e.i, e.j], "tag": e.tag, "bound": e.describe(), "samples": self.samples,
               "violations": len(self.violations), "undefined": self.undefined,
               "min_ratio": f"{self.min_ratio:.12g}", "max_ratio": f"{self.max_ratio:.12g}",
               "passed": self.passed}
        if self.exact_identity is not None:
            out["exact_identity"] = self.exact_identity
        if self.tight_lower is not None:
            out["tight_lower"] = self.tight_lower
        if self.tight_upper is not None:
            out["tight_upper"] = self.tight_upper
        return out


def _ratio_bounds(ev: SampleEvaluator, e: BoundTableEntry):
    lo2, hi2 = ev.ratio2(e.n, e.i, e.j)
    lo = np.sqrt(np.maximum(lo2, 0.0)) * (1 - 1e-15)
    hi = np.sqrt(hi2) * (1 + 1e-15)
    return lo, hi


def _precise_ratio(e: BoundTableEntry, shape, prec: int = 256):
    a = precise_d2(e.n, e.i, shape, prec)
    b = precise_d2(e.n, e.j, shape, prec)
    if a is None or b is None or not b.is_positive():
        return None
    return (a / b).clip_below(0).sqrt()


def check_row(ev: SampleEvaluator, e: BoundTableEntry, tightness: bool = False,
              tolerance: float = TOLERANCE, identity_seed: int = 0) -> RowCheck:
    """Look for samples where the ratio leaves [lower - tol, upper + tol]."""
    lo, hi = _ratio_bounds(ev, e)
    defined = np.isfinite(hi)
    L = e.lower.enclosure(128) if e.lower is not None else None
    U = e.upper.enclosure(128) if e.upper is not None else None
    bad = np.zeros(len(ev), dtype=bool)
    unsure = np.zeros(len(ev), dtype=bool)
    if L is not None:
        floor_lo, floor_hi = L.lo_float() - tolerance, L.hi_float() - tolerance
        bad |= defined & (hi < floor_lo)
        unsure |= defined & (lo < floor_hi) & ~(hi < floor_lo)
    if U is not None:
        ceil_lo, ceil_hi = U.lo_float() + tolerance, U.hi_float() + tolerance
        bad |= defined & (lo > ceil_hi)
        unsure |= defined & (hi > ceil_lo) & ~(lo > ceil_hi)
    tol = Fraction(tolerance)
    violations = np.nonzero(bad)[0].tolist()
    for k in np.nonzero(unsure & ~bad)[0].tolist():
        r = _precise_ratio(e, ev.shapes[k])
        if r is None:
            continue
        if L is not None and r.upper < L.lower - tol:
            violations.append(k)
        elif U is not None and r.lower > U.upper + tol:
            violations.append(k)
    mid = np.where(defined, 0.5 * (lo + hi), np.nan)
    row = RowCheck(e, len(ev), sorted(violations), int((~defined).sum()),
                   float(np.nanmin(mid)), float(np.nanmax(mid)))
    if e.is_identity:
        k2 = e.upper.square()
        row.exact_identity = k2.is_rational() and exact_identity_holds(e.n, e.i, e.j, k2.as_qsqrt3().p,
                                                                       seed=identity_seed)
    if tightness:
        _tightness(row)
    return row


def _tightness(row: RowCheck) -> None:
    e = row.entry
    lo_val, hi_val = row.min_ratio, row.max_ratio
    need_lo = e.lower is not None and abs(lo_val - float(e.lower)) > TIGHTNESS
    need_hi = e.upper is not None and abs(hi_val - float(e.upper)) > TIGHTNESS
    if need_lo or need_hi:
        obj = compile_ratio(RatioProblem(e.n, e.i, e.j))
        if need_lo:
            lim = _limit_extremes(obj, "inf")
            if lim is not None:
                lo_val = min(lo_val, sqrt(max(lim[1], 0.0)))
        if need_hi:
            lim = _limit_extremes(obj, "sup")
            if lim is not None and lim[0] != inf:
                hi_val = max(hi_val, sqrt(lim[0]))
    if e.lower is not None:
        row.tight_lower = abs(lo_val - float(e.lower)) <= TIGHTNESS
    if e.upper is not None:
        row.tight_upper = abs(hi_val - float(e.upper)) <= TIGHTNESS


def check_table(config: RunConfig = DEFAULT, tightness: bool = False,
                entries: Optional[Sequence[BoundTableEntry]] = None) -> List[RowCheck]:
    ev = SampleEvaluator(sample_shapes(config))
    rows = entries if entries is not None else bound_table().entries
    return [check_row(ev, e, tightness, identity_seed=config.seed) for e in rows]
