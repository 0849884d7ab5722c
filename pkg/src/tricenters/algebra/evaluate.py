"""Exact and interval evaluation of S-linear polynomials at triangles."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

from ..errors import NotATriangle
from .interval import DEFAULT_PRECISION, IntervalScalar
from .qfield import QSqrt3
from .slinear import SIGMA, SLinearPoly
from .tower import SurdValue


def check_triangle(a, b, c) -> None:
    if min(a, b, c) <= 0 or a >= b + c or b >= a + c or c >= a + b:
        raise NotATriangle(f"sides ({a}, {b}, {c}) violate the strict triangle inequality")


def sigma_exact(a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    return (a + b - c) * (a - b + c) * (-a + b + c) * (a + b + c) / 4


def eval_exact(x: SLinearPoly, sides: Sequence) -> SurdValue:
    """Exact value at rational sides as ``u + v*sqrt(m)`` with ``m = sigma``."""
    a, b, c = (Fraction(s) for s in sides)
    check_triangle(a, b, c)
    m = sigma_exact(a, b, c)
    u = QSqrt3.coerce(x.base.evaluate(a, b, c))
    v = QSqrt3.coerce(x.s_coeff.evaluate(a, b, c)) if not x.s_coeff.is_zero() else QSqrt3.ZERO
    return SurdValue(u, v, m)


def S_exact(sides: Sequence) -> SurdValue:
    a, b, c = (Fraction(s) for s in sides)
    check_triangle(a, b, c)
    return SurdValue(QSqrt3.ZERO, QSqrt3.ONE, sigma_exact(a, b, c))


def _as_interval(x, prec: int) -> IntervalScalar:
    if isinstance(x, IntervalScalar):
        return x.with_precision(prec) if x.prec != prec else x
    if isinstance(x, tuple) and len(x) == 2:
        return IntervalScalar(x[0], x[1], prec)
    return IntervalScalar.exact(Fraction(x) if isinstance(x, (int, Fraction)) else x, prec)


def sigma_interval(a: IntervalScalar, b: IntervalScalar, c: IntervalScalar,
                   flat_gap_floor=None) -> IntervalScalar:
    """Enclosure of sigma over a box; factors are kept nonnegative.

    ``flat_gap_floor`` clips ``b + c - a`` from below, restricting the
    enclosure to the part of the box at least that far from degeneracy.
    """
    g1 = a + b - c
    g2 = a - b + c
    g3 = -a + b + c
    if flat_gap_floor is not None:
        g3 = g3.clip_below(flat_gap_floor)
    g4 = a + b + c
    f1, f2, f3, f4 = (g if g.is_nonnegative() else g.clip_below(0) for g in (g1, g2, g3, g4))
    return (f1 * f2 * f3 * f4) * Fraction(1, 4)


def eval_interval(x: SLinearPoly, box: Sequence, precision: int = DEFAULT_PRECISION) -> IntervalScalar:
    """Enclosure of ``x`` over a box of (a, b, c) values; S uses its nonnegative branch.

    ``box`` entries may be exact scalars, ``(lo, hi)`` pairs or intervals.
    """
    a, b, c = (_as_interval(v, precision) for v in box)
    base = x.base.evaluate(a, b, c)
    if not isinstance(base, IntervalScalar):
        base = IntervalScalar.exact(base, precision)
    if x.s_coeff.is_zero():
        return base
    S = sigma_interval(a, b, c).sqrt()
    sc = x.s_coeff.evaluate(a, b, c)
    if not isinstance(sc, IntervalScalar):
        sc = IntervalScalar.exact(sc, precision)
    return base + sc * S


def sides_interval(sides: Sequence, precision: int) -> Tuple[IntervalScalar, ...]:
    return tuple(_as_interval(s, precision) for s in sides)
