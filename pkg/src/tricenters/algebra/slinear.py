"""Polynomials that are linear in S, with S^2 reduced to sigma(a, b, c)."""

from __future__ import annotations

from fractions import Fraction

from .poly import A, B, C, Poly3
from .qfield import QSqrt3

# S is twice the triangle area, so S^2 = (1/4)(a+b-c)(a-b+c)(-a+b+c)(a+b+c).
SIGMA = ((A + B - C) * (A - B + C) * (-A + B + C) * (A + B + C)).scale(Fraction(1, 4))


def _as_poly(x) -> Poly3:
    if isinstance(x, Poly3):
        return x
    return Poly3.constant(x)


class SLinearPoly:
    """``base + s_coeff * S`` with ``base, s_coeff`` in Q(sqrt 3)[a, b, c]."""

    __slots__ = ("base", "s_coeff")

    def __init__(self, base=None, s_coeff=None):
        self.base = _as_poly(base) if base is not None else Poly3()
        self.s_coeff = _as_poly(s_coeff) if s_coeff is not None else Poly3()

    @classmethod
    def lift(cls, x) -> SLinearPoly:
        if isinstance(x, SLinearPoly):
            return x
        return cls(_as_poly(x))

    def __repr__(self) -> str:
        if self.s_coeff.is_zero():
            return f"SLinearPoly({self.base.to_string()})"
        return f"SLinearPoly({self.base.to_string()} + S*[{self.s_coeff.to_string()}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SLinearPoly):
            try:
                other = SLinearPoly.lift(other)
            except TypeError:
                return NotImplemented
        return self.base == other.base and self.s_coeff == other.s_coeff

    def __hash__(self) -> int:
        return hash((self.base, self.s_coeff))

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.s_coeff.is_zero()

    def is_s_free(self) -> bool:
        return self.s_coeff.is_zero()

    def has_sqrt3(self) -> bool:
        return self.base.has_sqrt3() or self.s_coeff.has_sqrt3()

    def degree(self) -> int:
        """Total degree counting S as degree 2."""
        d0 = self.base.degree()
        d1 = self.s_coeff.degree()
        return max(d0, d1 + 2 if d1 >= 0 else -1)

    def __add__(self, other) -> SLinearPoly:
        other = SLinearPoly.lift(other)
        return SLinearPoly(self.base + other.base, self.s_coeff + other.s_coeff)

    __radd__ = __add__

    def __neg__(self) -> SLinearPoly:
        return SLinearPoly(-self.base, -self.s_coeff)

    def __sub__(self, other) -> SLinearPoly:
        return self + (-SLinearPoly.lift(other))

    def __rsub__(self, other) -> SLinearPoly:
        return SLinearPoly.lift(other) - self

    def __mul__(self, other) -> SLinearPoly:
        return slin_mul(self, SLinearPoly.lift(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SLinearPoly:
        result, base = SLinearPoly(Poly3.constant(1)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def permute(self, perm) -> SLinearPoly:
        # S is symmetric in (a, b, c)
        return SLinearPoly(self.base.permute(perm), self.s_coeff.permute(perm))

    def cyclic(self) -> SLinearPoly:
        return self.permute((1, 2, 0))

    def conjugate_s(self) -> SLinearPoly:
        """Replace S by -S."""
        return SLinearPoly(self.base, -self.s_coeff)

    def norm_s(self) -> Poly3:
        """``(base + qS)(base - qS) = base^2 - q^2 sigma``; S-free."""
        return self.base * self.base - self.s_coeff * self.s_coeff * SIGMA

    def scale(self, k) -> SLinearPoly:
        return SLinearPoly(self.base.scale(k), self.s_coeff.scale(k))


def slin_mul(x: SLinearPoly, y: SLinearPoly) -> SLinearPoly:
    """Product in Q(sqrt 3)[a, b, c][S] / (S^2 - sigma)."""
    base = x.base * y.base
    if not x.s_coeff.is_zero() and not y.s_coeff.is_zero():
        base = base + x.s_coeff * y.s_coeff * SIGMA
    s_part = Poly3()
    if not y.s_coeff.is_zero():
        s_part = s_part + x.base * y.s_coeff
    if not x.s_coeff.is_zero():
        s_part = s_part + x.s_coeff * y.base
    return SLinearPoly(base, s_part)


S = SLinearPoly(Poly3(), Poly3.constant(1))
SQRT3 = SLinearPoly(Poly3.constant(QSqrt3(0, 1)))
