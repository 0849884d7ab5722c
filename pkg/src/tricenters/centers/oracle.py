"""Independent Cartesian computation of center positions.

The triangle is placed with C = (0, 0), B = (a, 0) and A above the x-axis.
S comes from the placement (twice the area), not from Heron's product, and
distances are plain Euclidean distances, so this path shares nothing with
the barycentric distance formula except the catalog entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Tuple

import mpmath

from ..algebra.evaluate import check_triangle
from ..algebra.poly import Poly3
from ..errors import DegenerateCenter
from .catalog import check_index, coordinate_triple

ORACLE_PRECISION = 192


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _eval_poly(p: Poly3, a, b, c, sqrt3):
    total = mpmath.mpf(0)
    for (i, j, k), coef in p.terms.items():
        cv = _mp(coef.p) + _mp(coef.q) * sqrt3 if coef.q else _mp(coef.p)
        total += cv * a ** i * b ** j * c ** k
    return total


def vertices(sides: Sequence, precision: int = ORACLE_PRECISION):
    a, b, c = (Fraction(s) for s in sides)
    check_triangle(a, b, c)
    with mpmath.workprec(precision):
        am, bm, cm = _mp(a), _mp(b), _mp(c)
        xa = (am * am + bm * bm - cm * cm) / (2 * am)
        ya = mpmath.sqrt(bm * bm - xa * xa)
        return (xa, ya), (am, mpmath.mpf(0)), (mpmath.mpf(0), mpmath.mpf(0))


def cartesian_oracle(index: int, sides: Sequence, precision: int = ORACLE_PRECISION) -> Tuple[mpmath.mpf, mpmath.mpf]:
    """Planar position of X_index in the standard placement."""
    check_index(index)
    A_, B_, C_ = vertices(sides, precision)
    with mpmath.workprec(precision):
        a, b, c = (_mp(Fraction(s)) for s in sides)
        S = a * A_[1]  # twice the area: base a times height
        sqrt3 = mpmath.sqrt(3)
        weights = []
        for poly in coordinate_triple(index):
            val = _eval_poly(poly.base, a, b, c, sqrt3)
            if not poly.s_coeff.is_zero():
                val += _eval_poly(poly.s_coeff, a, b, c, sqrt3) * S
            weights.append(val)
        total = weights[0] + weights[1] + weights[2]
        if total == 0:
            raise DegenerateCenter(f"coordinate sum of X{index} vanishes")
        u, v, w = (x / total for x in weights)
        return (u * A_[0] + v * B_[0] + w * C_[0], u * A_[1] + v * B_[1] + w * C_[1])


def oracle_distance(i: int, j: int, sides: Sequence, precision: int = ORACLE_PRECISION) -> mpmath.mpf:
    P = cartesian_oracle(i, sides, precision)
    Q = cartesian_oracle(j, sides, precision)
    with mpmath.workprec(precision):
        return mpmath.sqrt((P[0] - Q[0]) ** 2 + (P[1] - Q[1]) ** 2)
