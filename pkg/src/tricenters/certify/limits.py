"""Ratio limits at the boundary of shape space.

Three families of straight paths reach the boundary as t -> 0+ (see
:mod:`tricenters.shapespace`).  For S-free objectives the numerator and
denominator restricted to a family are polynomials in (t, p), p being the
family parameter; the limit along the path with parameter p is the ratio of
the lowest-order t coefficients, a rational function of p that can be
bounded exactly.  Objectives with S terms get a numeric Richardson estimate
along the default paths instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import inf
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.interval import IntervalScalar
from ..algebra.poly import Poly3
from ..algebra.qfield import QSqrt3
from ..shapespace import BoundaryPath, boundary_paths
from . import univariate as uv
from .objective import RatioObjective

# closed parameter ranges of each family (open ends are harmless for bounds)
FAMILY_RANGES: Dict[str, Tuple[Fraction, Fraction]] = {
    "flat": (Fraction(0), Fraction(1, 2)),
    "needle": (Fraction(0), Fraction(1)),
    "equilateral": (Fraction(0), Fraction(1)),
    "corner": (Fraction(-1), Fraction(1)),
}


def _family_sides(family: str):
    T, P = Poly3.var(0), Poly3.var(1)
    one = Poly3.constant(1)
    if family == "flat":
        return one, (one - P) * (one + T), P * (one + T)
    if family == "needle":
        return one, one - P * T, T
    if family == "equilateral":
        return one, one - P * T, one - T
    if family == "corner":
        half = Poly3.constant(Fraction(1, 2))
        return one, half + T, half + P * T
    raise ValueError(f"unknown family {family!r}")


def expand(poly: Poly3, family: str) -> Dict[int, List[QSqrt3]]:
    """``poly`` on the family as {t-power: coefficients in p}."""
    sub = poly.evaluate(*_family_sides(family))
    out: Dict[int, Dict[int, QSqrt3]] = {}
    if not isinstance(sub, Poly3):
        sub = Poly3.constant(sub)
    for (i, j, _), c in sub.terms.items():
        out.setdefault(i, {})[j] = c
    res = {}
    for i, row in out.items():
        coeffs = [QSqrt3.ZERO] * (max(row) + 1)
        for j, c in row.items():
            coeffs[j] = c
        coeffs = uv.strip(coeffs)
        if coeffs:
            res[i] = coeffs
    return res


def _shift(g: Sequence[QSqrt3], m: Fraction) -> List[QSqrt3]:
    """Coefficients of g(m + x)."""
    out = list(g)
    n = len(out)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + out[k + 1] * m
    return out


def _range(g: Sequence[QSqrt3], lo: Fraction, hi: Fraction, prec: int) -> IntervalScalar:
    """Taylor-form enclosure of g over [lo, hi]."""
    m, r = (lo + hi) / 2, (hi - lo) / 2
    coeffs = _shift(g, m)
    total = IntervalScalar.exact(coeffs[0], prec) if coeffs else IntervalScalar.exact(0, prec)
    rp = Fraction(1)
    for c in coeffs[1:]:
        rp *= r
        t = IntervalScalar.exact(c * rp, prec)
        mag = max(abs(t.lower), abs(t.upper))
        total = total + IntervalScalar(-mag, mag, prec)
    return total


@dataclass
class LeadingLimit:
    """Limit of num/den along every path of one family, as a function of p."""

    family: str
    order_num: Optional[int]
    order_den: Optional[int]
    num: List[QSqrt3] = field(default_factory=list)
    den: List[QSqrt3] = field(default_factory=list)

    @property
    def kind(self) -> str:
        if self.order_den is None:
            return "undefined"
        if self.order_num is None or self.order_num > self.order_den:
            return "zero"
        if self.order_num < self.order_den:
            return "infinite"
        return "finite"

    def value(self, p) -> Optional[QSqrt3]:
        if self.kind == "zero":
            return QSqrt3.ZERO
        if self.kind != "finite":
            return None
        d = uv.evaluate(self.den, Fraction(p))
        if not d:
            return None
        return uv.evaluate(self.num, Fraction(p)) / d

    def reduced(self):
        """(num, den) with common factors removed and den >= 0 on the range."""
        n, d = uv.cancel(self.num, self.den)
        lo, hi = FAMILY_RANGES[self.family]
        if not uv.nonnegative_on(d, lo, hi):
            n, d = [-c for c in n], [-c for c in d]
        return n, d

    def extremes(self, tolerance: float = 1e-12, prec: int = 128, max_pieces: int = 4000):
        """Certified (inf_lo, inf_hi, sup_lo, sup_hi, argmin, argmax) over the family range.

        A piece is dropped from the sup search once the Taylor range of
        ``num - k den`` with ``k`` just above the best value found is <= 0 on
        it (mirror test for the inf), which converges quadratically.  Only
        sign tests are used, so a denominator vanishing at an end of the
        range is harmless; the sup is infinite when the numerator does not
        vanish there too.
        """
        lo, hi = FAMILY_RANGES[self.family]
        if self.kind == "zero":
            return 0.0, 0.0, 0.0, 0.0, lo, lo
        if self.kind != "finite":
            return None
        n, d = self.reduced()
        if not uv.nonnegative_on(d, lo, hi):
            return None
        unbounded = any(not uv.evaluate(d, p) and uv.evaluate(n, p) for p in (lo, hi))
        if not unbounded and not uv.positive_on(d, lo, hi):
            return None
        best = {"sup": (-inf, lo), "inf": (inf, lo)}

        def probe(p):
            dv = uv.evaluate(d, p)
            if not dv:
                return
            v = IntervalScalar.exact(uv.evaluate(n, p) / dv, prec)
            if v.lo_float() > best["sup"][0]:
                best["sup"] = (v.lo_float(), p)
            if v.hi_float() < best["inf"][0]:
                best["inf"] = (v.hi_float(), p)

        for p in (lo, hi, (lo + hi) / 2):
            probe(p)
        active = {"sup": [] if unbounded else [(lo, hi)], "inf": [(lo, hi)]}
        for _ in range(80):
            if not active["sup"] and not active["inf"]:
                break
            for side in ("sup", "inf"):
                keep = []
                bound = best[side][0]
                k = Fraction(bound + tolerance if side == "sup" else max(bound - tolerance, 0.0))
                g = [a - b * k for a, b in _pad(n, d)]
                for a, b in active[side]:
                    r = _range(g, a, b, prec)
                    done = r.is_nonpositive() if side == "sup" else r.is_nonnegative()
                    if not done:
                        m = (a + b) / 2
                        probe(m)
                        keep.extend([(a, m), (m, b)])
                active[side] = keep
            if len(active["sup"]) + len(active["inf"]) > max_pieces:
                break
        sup_lo, argmax = best["sup"]
        inf_hi, argmin = best["inf"]
        if unbounded:
            sup_lo = sup_hi = inf
        elif active["sup"]:
            sup_hi = self._naive(n, d, active["sup"], prec, True)
        else:
            sup_hi = float(np.nextafter(sup_lo + tolerance, inf))
        if active["inf"]:
            inf_lo = self._naive(n, d, active["inf"], prec, False)
        else:
            inf_lo = float(np.nextafter(max(inf_hi - tolerance, 0.0), -inf))
        return inf_lo, inf_hi, sup_lo, sup_hi, argmin, argmax

    @staticmethod
    def _naive(n, d, pieces, prec, upper: bool) -> float:
        vals = []
        for a, b in pieces:
            q = _range(n, a, b, prec) / _range(d, a, b, prec)
            vals.append(q.hi_float() if upper else q.lo_float())
        return max(vals) if upper else min(vals)

    def consistent(self, kappa: QSqrt3, direction: str) -> bool:
        """Exact check that every limit in the family satisfies the claim."""
        lo, hi = FAMILY_RANGES[self.family]
        k = self.kind
        if k == "undefined":
            return False
        if k == "zero":
            return direction == "le" or not kappa
        if k == "infinite":
            return direction == "ge"
        g = uv.strip([a - kappa * b for a, b in _pad(self.num, self.den)])
        if direction == "le":
            return uv.nonpositive_on(g, lo, hi)
        return uv.nonnegative_on(g, lo, hi)


def _pad(f, g):
    n = max(len(f), len(g))
    f = list(f) + [QSqrt3.ZERO] * (n - len(f))
    g = list(g) + [QSqrt3.ZERO] * (n - len(g))
    return list(zip(f, g))


def leading_limit(obj: RatioObjective, family: str) -> LeadingLimit:
    if not obj.s_free:
        raise ValueError("leading-order limits need an S-free objective")
    return _leading_cached(obj.problem, family)


@lru_cache(maxsize=None)
def _leading_cached(problem, family: str) -> LeadingLimit:
    from .objective import compile_ratio
    obj = compile_ratio(problem)
    en = expand(obj.num.base, family)
    ed = expand(obj.den.base, family)
    mn = min(en) if en else None
    md = min(ed) if ed else None
    return LeadingLimit(family, mn, md, en.get(mn, []), ed.get(md, []))


# -- numeric path limits -------------------------------------------------------

@dataclass
class PathLimit:
    """Enclosures along one path and the extrapolated limit."""

    path: str
    samples: List[Tuple[int, float, float]]  # (k, lo, hi) of the ratio at t = 2^-k
    estimate: float
    error: float
    exact: Optional[str] = None  # closed form when the leading-order limit is exact

    def as_dict(self) -> dict:
        return {
            "path": self.path,
            "samples": [[k, repr(lo), repr(hi)] for k, lo, hi in self.samples],
            "estimate": repr(self.estimate),
            "error": repr(self.error),
            "exact": self.exact,
        }


def _richardson(values: List[float], ratio: float) -> Tuple[float, float]:
    """Last extrapolant and the change between the last two, for steps t -> t/2."""
    if len(values) < 3:
        return values[-1], abs(values[-1] - values[-2]) if len(values) > 1 else inf
    ext = [(ratio * b - a) / (ratio - 1) for a, b in zip(values, values[1:])]
    return ext[-1], abs(ext[-1] - ext[-2])


def path_limit(obj: RatioObjective, path: BoundaryPath, k_min: int = 4, k_max: int = 20,
               prec: int = 128) -> PathLimit:
    samples = []
    mids = []
    for t, shape in path.points(k_min, k_max):
        n, d = obj.num_den_enclosure(shape.sides, prec)
        if d.contains_zero():
            samples.append((t.denominator.bit_length() - 1, -inf, inf))
            continue
        q = n / d
        samples.append((t.denominator.bit_length() - 1, q.lo_float(), q.hi_float()))
        mids.append(q.mid())
    exact = None
    if obj.s_free:
        lim = leading_limit(obj, path.family)
        if lim.kind == "infinite":
            exact = "inf"
        else:
            v = lim.value(path.parameter)
            if v is not None:
                exact = str(v)
    if len(mids) < 2:
        return PathLimit(path.name, samples, float("nan"), inf, exact)
    if abs(mids[-1]) > 1e6 * max(1.0, abs(mids[0])):
        return PathLimit(path.name, samples, inf, 0.0, exact)
    best = None
    for ratio in (2.0, 2 ** 0.5):
        est, err = _richardson(mids, ratio)
        width = max(hi - lo for _, lo, hi in samples[-3:])
        cand = (err + width, est)
        if best is None or cand[0] < best[0]:
            best = cand
    err, est = best
    return PathLimit(path.name, samples, est, err, exact)


def path_limits(obj: RatioObjective, paths: Optional[List[BoundaryPath]] = None,
                prec: int = 128) -> List[PathLimit]:
    return [path_limit(obj, p, prec=prec) for p in (paths or boundary_paths())]


@dataclass
class FamilyBounds:
    """Certified range of the leading-order limit over one family."""

    family: str
    kind: str
    inf_lo: float
    inf_hi: float
    sup_lo: float
    sup_hi: float
    argmin: Fraction
    argmax: Fraction


def family_bounds(obj: RatioObjective, tolerance: float = 1e-12) -> List[FamilyBounds]:
    """Per family, enclosures of the inf and sup of the boundary limit."""
    out = []
    for fam in FAMILY_RANGES:
        lim = leading_limit(obj, fam)
        if lim.kind == "infinite":
            out.append(FamilyBounds(fam, "infinite", inf, inf, inf, inf, Fraction(0), Fraction(0)))
            continue
        ext = lim.extremes(tolerance)
        if ext is None:
            out.append(FamilyBounds(fam, "unresolved", 0.0, inf, 0.0, inf, Fraction(0), Fraction(0)))
            continue
        il, ih, sl, sh, amin, amax = ext
        out.append(FamilyBounds(fam, lim.kind, il, ih, sl, sh, amin, amax))
    return out
