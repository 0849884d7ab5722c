"""Rigorous batched evaluation of squared distances over a sample of shapes.

Each barycentric component of each center is a polynomial on shape space;
the float Taylor tier evaluated on zero-width boxes gives a guaranteed
enclosure of its value at every sample at once.  Squared distances are then
assembled in outward-rounded float interval arithmetic.  Enclosures are
tight except where a coordinate sum nearly vanishes, and callers fall back
to multiprecision intervals at the few samples left undecided.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..algebra.slinear import SLinearPoly
from ..centers.catalog import coordinate_sum, coordinate_triple
from ..centers.points import distance_squared
from ..certify.evaluator import _add_hi, _add_lo, _mul_bounds, _sqrt_bounds
from ..certify.objective import SIGMA_UC, Bivariate
from ..certify.taylor import FloatTaylor, range_bounds
from ..errors import DegenerateCenter
from ..shapespace import TriangleShape

Pair = Tuple[np.ndarray, np.ndarray]


def fraction_enclosure(values: Sequence[Fraction]) -> Pair:
    """Float (lo, hi) arrays enclosing exact rationals."""
    lo = np.empty(len(values))
    hi = np.empty(len(values))
    for k, v in enumerate(values):
        f = float(v)
        d = Fraction(f) - v
        lo[k] = f if d <= 0 else math.nextafter(f, -math.inf)
        hi[k] = f if d >= 0 else math.nextafter(f, math.inf)
    return lo, hi


def _point_boxes(values: Sequence[Fraction]) -> Pair:
    """Exact float centre and radius of a tiny box around each rational."""
    lo, hi = fraction_enclosure(values)
    return lo, hi - lo


def add(x: Pair, y: Pair) -> Pair:
    return _add_lo(x[0], y[0]), _add_hi(x[1], y[1])


def sub(x: Pair, y: Pair) -> Pair:
    return _add_lo(x[0], -y[1]), _add_hi(x[1], -y[0])


def mul(x: Pair, y: Pair) -> Pair:
    return _mul_bounds(x[0], x[1], y[0], y[1])


def div(x: Pair, y: Pair) -> Pair:
    """Quotient; entire where the divisor straddles zero."""
    bad = (y[0] <= 0) & (y[1] >= 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ylo = np.where(bad, 1.0, y[0])
        yhi = np.where(bad, 1.0, y[1])
        lo, hi = _mul_bounds(x[0], x[1], 1.0 / yhi, 1.0 / ylo)
        # reciprocals are rounded too
        lo = lo - np.abs(lo) * 4e-16
        hi = hi + np.abs(hi) * 4e-16
    lo = np.where(bad, -np.inf, lo)
    hi = np.where(bad, np.inf, hi)
    return lo, hi


class SampleEvaluator:
    """Enclosures of every D(i, j)^2 over a fixed list of canonical shapes."""

    def __init__(self, shapes: Sequence[TriangleShape]):
        self.shapes = list(shapes)
        if not self.shapes:
            raise ValueError("need at least one shape")
        u = [s.b + s.c - 1 for s in self.shapes]
        c = [s.c for s in self.shapes]
        self._um, self._ur = _point_boxes(u)
        self._cm, self._cr = _point_boxes(c)
        self.b2 = fraction_enclosure([s.b * s.b for s in self.shapes])
        self.c2 = fraction_enclosure([s.c * s.c for s in self.shapes])
        self._S = None
        self._coords: Dict[int, Tuple[Pair, Pair, Pair, Pair]] = {}
        self._d2: Dict[Tuple[int, int], Pair] = {}

    def __len__(self) -> int:
        return len(self.shapes)

    def _eval_biv(self, poly: Bivariate) -> Pair:
        if poly.is_zero():
            z = np.zeros(len(self.shapes))
            return z, z.copy()
        T, E = FloatTaylor(poly).shift(self._um, self._ur, self._cm, self._cr)
        return range_bounds(T, E)

    def _area(self) -> Pair:
        if self._S is None:
            lo, hi = self._eval_biv(SIGMA_UC)
            self._S = _sqrt_bounds(lo, hi)
        return self._S

    def evaluate(self, p: SLinearPoly) -> Pair:
        base = self._eval_biv(Bivariate.from_poly3_uc(p.base))
        if p.s_coeff.is_zero():
            return base
        sc = self._eval_biv(Bivariate.from_poly3_uc(p.s_coeff))
        return add(base, mul(sc, self._area()))

    def coordinates(self, k: int):
        """(f1, f2, f3, sum) enclosures of center k."""
        got = self._coords.get(k)
        if got is None:
            f = [self.evaluate(p) for p in coordinate_triple(k)]
            got = (*f, self.evaluate(coordinate_sum(k)))
            self._coords[k] = got
        return got

    def d2(self, i: int, j: int) -> Pair:
        """Enclosure of D(i, j)^2 at each sample (entire where undefined)."""
        if i == j:
            z = np.zeros(len(self.shapes))
            return z, z.copy()
        key = (min(i, j), max(i, j))
        got = self._d2.get(key)
        if got is None:
            fi, fj = self.coordinates(i), self.coordinates(j)
            si, sj = fi[3], fj[3]
            X, Y, Z = (sub(mul(fi[k], sj), mul(fj[k], si)) for k in range(3))
            one = (np.ones(len(self.shapes)), np.ones(len(self.shapes)))
            N = add(add(mul(one, mul(Y, Z)), mul(self.b2, mul(Z, X))), mul(self.c2, mul(X, Y)))
            N = (-N[1], -N[0])
            s = mul(si, sj)
            got = div(N, mul(s, s))
            got = (np.maximum(got[0], 0.0), got[1])
            self._d2[key] = got
        return got

    def ratio2(self, n: int, i: int, j: int) -> Pair:
        """Enclosure of (D(n, i) / D(n, j))^2."""
        return div(self.d2(n, i), self.d2(n, j))


def precise_d2(i: int, j: int, shape: TriangleShape, precision: int = 256):
    """Multiprecision enclosure of D(i, j)^2, or None where undefined."""
    sides = tuple((s, s) for s in shape.sides)
    try:
        return distance_squared(i, j, sides, precision)
    except (DegenerateCenter, ZeroDivisionError):
        return None


def strictly_greater(n: int, i: int, j: int, shape: TriangleShape,
                     precisions: Sequence[int] = (128, 256)):
    """Interval proof that D(n, i) > D(n, j) at the shape.

    Returns (d2_i, d2_j) enclosures on success, else None.
    """
    for prec in precisions:
        a = precise_d2(n, i, shape, prec)
        b = precise_d2(n, j, shape, prec)
        if a is None or b is None:
            return None
        if a.lower > b.upper:
            return a, b
        if b.lower > a.upper:
            return None
    return None


def certified_violations(ev: SampleEvaluator, n: int, i: int, j: int) -> List[int]:
    """Sample indices where D(n, i) > D(n, j) holds with certainty (float tier)."""
    a = ev.d2(n, i)
    b = ev.d2(n, j)
    return np.nonzero(a[0] > b[1])[0].tolist()
