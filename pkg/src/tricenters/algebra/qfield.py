"""Exact arithmetic in the quadratic field Q(sqrt 3)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def sign_of_sum_with_root(p: Fraction, q: Fraction, d: Fraction) -> int:
    """Exact sign of ``p + q*sqrt(d)`` for rational ``p, q`` and ``d >= 0``."""
    if d < 0:
        raise ValueError("radicand must be nonnegative")
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    sq = 1 if q > 0 else -1
    if p == 0:
        return sq
    sp = 1 if p > 0 else -1
    if sp == sq:
        return sp
    # opposite signs: compare p^2 with q^2 d
    lhs, rhs = p * p, q * q * d
    if lhs == rhs:
        return 0
    return sp if lhs > rhs else sq


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Return the rational square root of ``x`` if it exists."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QSqrt3:
    """An element ``p + q*sqrt(3)`` with rational ``p`` and ``q``.

    Instances are immutable and hashable.  Ordinary ints and Fractions mix
    freely with them in arithmetic.
    """

    __slots__ = ("p", "q")

    def __init__(self, p: RationalLike = 0, q: RationalLike = 0):
        self.p = as_fraction(p)
        self.q = as_fraction(q)

    @staticmethod
    def _new(p: Fraction, q: Fraction) -> QSqrt3:
        obj = object.__new__(QSqrt3)
        obj.p = p
        obj.q = q
        return obj

    @classmethod
    def coerce(cls, x) -> QSqrt3:
        if isinstance(x, QSqrt3):
            return x
        return cls(x, 0)

    ZERO: QSqrt3
    ONE: QSqrt3
    SQRT3: QSqrt3

    def __repr__(self) -> str:
        return f"QSqrt3({self.p!r}, {self.q!r})"

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        root = "√3" if abs(self.q) == 1 else f"{abs(self.q)}√3"
        if self.p == 0:
            return root if self.q > 0 else f"-{root}"
        return f"{self.p}{'+' if self.q > 0 else '-'}{root}"

    def __eq__(self, other) -> bool:
        if isinstance(other, QSqrt3):
            return self.p == other.p and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __bool__(self) -> bool:
        return self.p != 0 or self.q != 0

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def __add__(self, other) -> QSqrt3:
        if isinstance(other, QSqrt3):
            return _q(self.p + other.p, self.q + other.q)
        if isinstance(other, (int, Fraction)):
            return _q(self.p + other, self.q)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> QSqrt3:
        return _q(-self.p, -self.q)

    def __sub__(self, other) -> QSqrt3:
        if isinstance(other, QSqrt3):
            return _q(self.p - other.p, self.q - other.q)
        if isinstance(other, (int, Fraction)):
            return _q(self.p - other, self.q)
        return NotImplemented

    def __rsub__(self, other) -> QSqrt3:
        return (-self) + other

    def __mul__(self, other) -> QSqrt3:
        if isinstance(other, QSqrt3):
            p1, q1, p2, q2 = self.p, self.q, other.p, other.q
            if q1 == 0:
                return _q(p1 * p2, p1 * q2)
            if q2 == 0:
                return _q(p1 * p2, q1 * p2)
            return _q(p1 * p2 + 3 * q1 * q2, p1 * q2 + q1 * p2)
        if isinstance(other, (int, Fraction)):
            return _q(self.p * other, self.q * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt3:
        return _q(self.p, -self.q)

    def norm(self) -> Fraction:
        """Field norm ``p^2 - 3 q^2``; zero only for the zero element."""
        return self.p * self.p - 3 * self.q * self.q

    def inverse(self) -> QSqrt3:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        return _q(self.p / n, -self.q / n)

    def __truediv__(self, other) -> QSqrt3:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt 3)")
            return _q(self.p / other, self.q / other)
        if isinstance(other, QSqrt3):
            if other.q == 0:
                return self / other.p
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other) -> QSqrt3:
        return QSqrt3.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QSqrt3:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = QSqrt3.ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        return sign_of_sum_with_root(self.p, self.q, Fraction(3))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __abs__(self) -> QSqrt3:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        if self.q == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * 3 ** 0.5

    def __reduce__(self):
        return (QSqrt3, (self.p, self.q))


_q = QSqrt3._new

QSqrt3.ZERO = QSqrt3(0, 0)
QSqrt3.ONE = QSqrt3(1, 0)
QSqrt3.SQRT3 = QSqrt3(0, 1)
