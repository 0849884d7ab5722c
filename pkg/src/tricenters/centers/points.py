"""Normalized barycentric points and squared distances between centers.

For normalized points P, Q with displacement (x, y, z) = P - Q the squared
distance is ``-a^2 y z - b^2 z x - c^2 x y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

from ..algebra.evaluate import check_triangle, eval_exact, sigma_interval
from ..algebra.interval import DEFAULT_PRECISION, IntervalScalar
from ..algebra.poly import A, B, C
from ..algebra.slinear import SLinearPoly
from ..algebra.tower import SurdValue
from ..errors import DegenerateCenter
from .catalog import check_index, coordinate_sum, coordinate_triple

Scalar = Union[SurdValue, IntervalScalar]


@dataclass(frozen=True)
class NormalizedPoint:
    u: Scalar
    v: Scalar
    w: Scalar

    def __iter__(self):
        return iter((self.u, self.v, self.w))

    def total(self) -> Scalar:
        return self.u + self.v + self.w


def _is_interval_sides(sides) -> bool:
    return any(isinstance(s, (IntervalScalar, tuple)) for s in sides)


def _interval_sides(sides, prec):
    out = []
    for s in sides:
        if isinstance(s, IntervalScalar):
            out.append(s.with_precision(prec) if s.prec != prec else s)
        elif isinstance(s, tuple):
            out.append(IntervalScalar(Fraction(s[0]) if not isinstance(s[0], float) else s[0],
                                      Fraction(s[1]) if not isinstance(s[1], float) else s[1], prec))
        else:
            out.append(IntervalScalar.exact(Fraction(s), prec))
    return out


def _interval_value(poly: SLinearPoly, a, b, c, S) -> IntervalScalar:
    base = poly.base.evaluate(a, b, c)
    if not isinstance(base, IntervalScalar):
        base = IntervalScalar.exact(base, a.prec)
    if poly.s_coeff.is_zero():
        return base
    sc = poly.s_coeff.evaluate(a, b, c)
    if not isinstance(sc, IntervalScalar):
        sc = IntervalScalar.exact(sc, a.prec)
    return base + sc * S


def normalized_barycentric(index: int, sides: Sequence, precision: int = DEFAULT_PRECISION) -> NormalizedPoint:
    """Coordinates of X_index divided by their sum.

    Rational sides give exact :class:`SurdValue` components summing to 1;
    interval sides give interval components.
    """
    check_index(index)
    if _is_interval_sides(sides):
        a, b, c = _interval_sides(sides, precision)
        S = sigma_interval(a, b, c).sqrt()
        coords = [_interval_value(p, a, b, c, S) for p in coordinate_triple(index)]
        total = coords[0] + coords[1] + coords[2]
        if total.contains_zero():
            raise DegenerateCenter(f"coordinate sum of X{index} is not bounded away from zero")
        return NormalizedPoint(*(x / total for x in coords))
    a, b, c = (Fraction(s) for s in sides)
    check_triangle(a, b, c)
    coords = [eval_exact(p, (a, b, c)) for p in coordinate_triple(index)]
    total = coords[0] + coords[1] + coords[2]
    if not total:
        raise DegenerateCenter(f"coordinate sum of X{index} vanishes at sides {(a, b, c)}")
    inv = total.inverse()
    return NormalizedPoint(*(x * inv for x in coords))


def squared_distance_between(P: NormalizedPoint, Q: NormalizedPoint, sides) -> Scalar:
    x, y, z = P.u - Q.u, P.v - Q.v, P.w - Q.w
    if _is_interval_sides(sides) or isinstance(x, IntervalScalar):
        prec = x.prec if isinstance(x, IntervalScalar) else DEFAULT_PRECISION
        a, b, c = _interval_sides(sides, prec)
        a2, b2, c2 = a.square(), b.square(), c.square()
    else:
        a, b, c = (Fraction(s) for s in sides)
        a2, b2, c2 = a * a, b * b, c * c
    return -(y * z * a2 + z * x * b2 + x * y * c2)


def distance_squared(i: int, j: int, sides: Sequence, precision: int = DEFAULT_PRECISION) -> Scalar:
    """Squared distance D(i, j)^2, exact at rational sides, enclosed at interval sides."""
    check_index(i)
    check_index(j)
    if i == j:
        if _is_interval_sides(sides):
            return IntervalScalar.exact(0, precision)
        check_triangle(*(Fraction(s) for s in sides))
        return SurdValue(0)
    P = normalized_barycentric(i, sides, precision)
    Q = normalized_barycentric(j, sides, precision)
    return squared_distance_between(P, Q, sides)


class PointTable:
    """All 20 normalized points at one exact triangle, computed once."""

    def __init__(self, sides: Sequence, indices: Sequence[int] = tuple(range(1, 21))):
        self.sides = tuple(Fraction(s) for s in sides)
        check_triangle(*self.sides)
        self.points = {}
        self.degenerate = set()
        for k in indices:
            try:
                self.points[k] = normalized_barycentric(k, self.sides)
            except DegenerateCenter:
                self.degenerate.add(k)

    def d2(self, i: int, j: int) -> SurdValue:
        if i in self.degenerate or j in self.degenerate:
            raise DegenerateCenter(f"X{i} or X{j} undefined at sides {self.sides}")
        if i == j:
            return SurdValue(0)
        return squared_distance_between(self.points[i], self.points[j], self.sides)


def midpoint_check(i: int, m: int, j: int, sides: Sequence, precision: int = DEFAULT_PRECISION) -> bool:
    """True iff X_m is the midpoint of X_i X_j at the given triangle.

    Exact comparison at rational sides; at interval sides the enclosures of
    ``2 m - i - j`` must all contain zero.
    """
    Pi = normalized_barycentric(i, sides, precision)
    Pm = normalized_barycentric(m, sides, precision)
    Pj = normalized_barycentric(j, sides, precision)
    diffs = [2 * pm - pi - pj for pi, pm, pj in zip(Pi, Pm, Pj)]
    if isinstance(diffs[0], IntervalScalar):
        return all(d.contains_zero() for d in diffs)
    return all(not d for d in diffs)


# -- symbolic form ---------------------------------------------------------

_SIDES2 = (A * A, B * B, C * C)


@lru_cache(maxsize=None)
def distance_numerator(i: int, j: int) -> SLinearPoly:
    """``N`` with ``D(i, j)^2 = N / (s_i s_j)^2``, ``s_k`` the coordinate sums."""
    check_index(i)
    check_index(j)
    fi, si = coordinate_triple(i), coordinate_sum(i)
    fj, sj = coordinate_triple(j), coordinate_sum(j)
    X, Y, Z = (fi[k] * sj - fj[k] * si for k in range(3))
    a2, b2, c2 = (SLinearPoly(p) for p in _SIDES2)
    return -(a2 * Y * Z + b2 * Z * X + c2 * X * Y)


def distance_squared_symbolic(i: int, j: int) -> Tuple[SLinearPoly, SLinearPoly]:
    """(numerator, denominator) of D(i, j)^2 as S-linear polynomials."""
    s = coordinate_sum(i) * coordinate_sum(j)
    return distance_numerator(i, j), s * s
