"""Exact values ``u + v*sqrt(m)`` with ``u, v`` in Q(sqrt 3) and rational ``m``.

At a rational triangle every Table-1 coordinate, normalized coordinate and
squared distance lives in this tower, where ``m = sigma(a, b, c) = S^2``.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .interval import DEFAULT_PRECISION, IntervalScalar
from .qfield import QSqrt3, rational_sqrt


class SurdValue:
    """``u + v*sqrt(m)``; normalized so ``v == 0`` whenever sqrt(m) lies in Q(sqrt 3)."""

    __slots__ = ("u", "v", "m")

    def __init__(self, u, v=QSqrt3.ZERO, m: Fraction = Fraction(0)):
        u = QSqrt3.coerce(u)
        v = QSqrt3.coerce(v)
        m = Fraction(m)
        if m < 0:
            raise ValueError("radicand must be nonnegative")
        if v and m:
            r = rational_sqrt(m)
            if r is not None:
                u, v = u + v * r, QSqrt3.ZERO
            else:
                r3 = rational_sqrt(3 * m)
                if r3 is not None:
                    # sqrt(m) = sqrt(3m)/sqrt(3) = (r3/3) sqrt(3)
                    u, v = u + v * QSqrt3(0, r3 / 3), QSqrt3.ZERO
        elif not m:
            v = QSqrt3.ZERO
        self.u, self.v, self.m = u, v, m

    @classmethod
    def _raw(cls, u: QSqrt3, v: QSqrt3, m: Fraction) -> SurdValue:
        obj = object.__new__(cls)
        obj.u, obj.v, obj.m = u, v, m
        return obj

    def as_tuple(self) -> tuple[QSqrt3, QSqrt3, Fraction]:
        return self.u, self.v, self.m

    def __repr__(self) -> str:
        if not self.v:
            return f"SurdValue({self.u})"
        return f"SurdValue({self.u} + ({self.v})*sqrt({self.m}))"

    def is_in_qsqrt3(self) -> bool:
        return not self.v

    def is_rational(self) -> bool:
        return not self.v and self.u.is_rational

    def _lift(self, other) -> SurdValue:
        if isinstance(other, SurdValue):
            if other.v and self.v and other.m != self.m:
                raise ValueError("surd values with different radicands")
            return other
        return SurdValue._raw(QSqrt3.coerce(other), QSqrt3.ZERO, self.m)

    def _m(self, other: SurdValue) -> Fraction:
        return self.m if self.v or not other.v else other.m

    def __add__(self, other) -> SurdValue:
        o = self._lift(other)
        return SurdValue._raw(self.u + o.u, self.v + o.v, self._m(o))

    __radd__ = __add__

    def __neg__(self) -> SurdValue:
        return SurdValue._raw(-self.u, -self.v, self.m)

    def __sub__(self, other) -> SurdValue:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> SurdValue:
        return (-self) + other

    def __mul__(self, other) -> SurdValue:
        o = self._lift(other)
        m = self._m(o)
        if not self.v:
            return SurdValue._raw(self.u * o.u, self.u * o.v, m)
        if not o.v:
            return SurdValue._raw(self.u * o.u, self.v * o.u, m)
        return SurdValue._raw(self.u * o.u + self.v * o.v * m, self.u * o.v + self.v * o.u, m)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SurdValue:
        result = SurdValue._raw(QSqrt3.ONE, QSqrt3.ZERO, self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self) -> SurdValue:
        return SurdValue._raw(self.u, -self.v, self.m)

    def inverse(self) -> SurdValue:
        if not self.v:
            return SurdValue._raw(self.u.inverse(), QSqrt3.ZERO, self.m)
        # (u + v r)^{-1} = (u - v r) / (u^2 - v^2 m)
        d = self.u * self.u - self.v * self.v * self.m
        if not d:
            raise ZeroDivisionError("inverse of zero surd value")
        dinv = d.inverse()
        return SurdValue._raw(self.u * dinv, -self.v * dinv, self.m)

    def __truediv__(self, other) -> SurdValue:
        o = self._lift(other)
        return self * o.inverse()

    def __rtruediv__(self, other) -> SurdValue:
        return self._lift(other) * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.u) or bool(self.v)

    def __eq__(self, other) -> bool:
        try:
            o = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return not (self - o)

    def __hash__(self) -> int:
        return hash((self.u, self.v, self.m if self.v else 0))

    def sign(self) -> int:
        """Exact sign of ``u + v sqrt(m)``."""
        su = self.u.sign()
        if not self.v:
            return su
        sv = self.v.sign()
        if su == 0:
            return sv
        if su == sv:
            return su
        diff = (self.u * self.u - self.v * self.v * self.m).sign()
        if diff == 0:
            return 0
        return su if diff > 0 else sv

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def enclosure(self, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
        """Certified interval enclosure at ``prec`` bits."""
        iu = IntervalScalar.exact(self.u, prec + 8)
        if not self.v:
            return iu.with_precision(prec)
        root = IntervalScalar.exact(self.m, prec + 8).sqrt()
        return (iu + IntervalScalar.exact(self.v, prec + 8) * root).with_precision(prec)

    def to_mpf(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mpmath.workprec(prec + 16):
            s3 = mpmath.sqrt(3)
            u = mpmath.mpf(self.u.p.numerator) / self.u.p.denominator + (
                mpmath.mpf(self.u.q.numerator) / self.u.q.denominator
            ) * s3
            if not self.v:
                return +u
            v = mpmath.mpf(self.v.p.numerator) / self.v.p.denominator + (
                mpmath.mpf(self.v.q.numerator) / self.v.q.denominator
            ) * s3
            return u + v * mpmath.sqrt(mpmath.mpf(self.m.numerator) / self.m.denominator)

    def __float__(self) -> float:
        return float(self.to_mpf(64))

    def sqrt_mpf(self, prec: int = DEFAULT_PRECISION) -> mpmath.mpf:
        with mpmath.workprec(prec + 16):
            return mpmath.sqrt(self.to_mpf(prec + 16))
