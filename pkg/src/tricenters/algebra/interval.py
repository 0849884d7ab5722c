"""Outward-rounded interval scalars at arbitrary binary precision.

Bounds are mpmath ``mpf`` tuples.  Every operation rounds the lower bound
toward -inf and the upper bound toward +inf, so the result always encloses
the exact image of the operands.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import libmp

from .qfield import QSqrt3

FLOOR = libmp.round_floor
CEIL = libmp.round_ceiling

_ZERO = libmp.fzero
_INF = libmp.finf
_NINF = libmp.fninf

DEFAULT_PRECISION = 128


def _mpf_from_fraction(x: Fraction, prec: int, rnd) -> tuple:
    return libmp.from_rational(x.numerator, x.denominator, prec, rnd)


def mpf_to_fraction(x: tuple) -> Fraction:
    if x in (_INF, _NINF) or x == libmp.fnan:
        raise OverflowError("non-finite bound has no rational value")
    sign, man, exp, _ = x
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _sqrt3_bounds(prec: int) -> tuple[tuple, tuple]:
    three = libmp.from_int(3)
    return libmp.mpf_sqrt(three, prec, FLOOR), libmp.mpf_sqrt(three, prec, CEIL)


class IntervalScalar:
    """A closed interval ``[lo, hi]`` of reals with a working precision."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PRECISION):
        if hi is None:
            hi = lo
        self.prec = prec
        self.lo = self._to_mpf(lo, prec, FLOOR)
        self.hi = self._to_mpf(hi, prec, CEIL)
        if libmp.mpf_gt(self.lo, self.hi):
            raise ValueError("interval lower bound exceeds upper bound")

    @staticmethod
    def _to_mpf(x, prec, rnd):
        if isinstance(x, tuple):
            return libmp.mpf_pos(x, prec, rnd)
        if isinstance(x, int):
            return libmp.from_int(x, prec, rnd)
        if isinstance(x, Fraction):
            return _mpf_from_fraction(x, prec, rnd)
        if isinstance(x, float):
            return libmp.from_float(x, prec, rnd)
        if isinstance(x, str):
            return libmp.from_str(x, prec, rnd)
        raise TypeError(f"cannot build interval bound from {type(x).__name__}")

    @classmethod
    def _raw(cls, lo, hi, prec) -> IntervalScalar:
        obj = object.__new__(cls)
        obj.lo, obj.hi, obj.prec = lo, hi, prec
        return obj

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
        """Tightest enclosure of an int, Fraction or QSqrt3 at ``prec`` bits."""
        if isinstance(x, QSqrt3):
            if x.q == 0:
                return cls(x.p, x.p, prec)
            return cls(x.p, x.p, prec) + cls(x.q, x.q, prec) * cls.sqrt3(prec)
        return cls(x, x, prec)

    @classmethod
    def sqrt3(cls, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
        lo, hi = _sqrt3_bounds(prec)
        return cls._raw(lo, hi, prec)

    @classmethod
    def entire(cls, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
        return cls._raw(_NINF, _INF, prec)

    # -- inspection -------------------------------------------------------
    def __repr__(self) -> str:
        return f"IntervalScalar([{self.lo_str()}, {self.hi_str()}], prec={self.prec})"

    def lo_str(self, digits: int = 20) -> str:
        return libmp.to_str(self.lo, digits)

    def hi_str(self, digits: int = 20) -> str:
        return libmp.to_str(self.hi, digits)

    @property
    def lower(self) -> Fraction:
        return mpf_to_fraction(self.lo)

    @property
    def upper(self) -> Fraction:
        return mpf_to_fraction(self.hi)

    def width(self) -> float:
        return libmp.to_float(libmp.mpf_sub(self.hi, self.lo, 53, CEIL))

    def lo_float(self) -> float:
        """Lower bound rounded down to a float."""
        return libmp.to_float(self.lo, rnd=FLOOR)

    def hi_float(self) -> float:
        """Upper bound rounded up to a float."""
        return libmp.to_float(self.hi, rnd=CEIL)

    def mid(self) -> float:
        return libmp.to_float(libmp.mpf_shift(libmp.mpf_add(self.lo, self.hi, self.prec + 2), -1))

    def mid_mpf(self) -> tuple:
        return libmp.mpf_shift(libmp.mpf_add(self.lo, self.hi, self.prec + 2), -1)

    def __float__(self) -> float:
        return self.mid()

    def contains(self, x) -> bool:
        """True if the exact value ``x`` (int, Fraction, QSqrt3, interval) lies inside."""
        if isinstance(x, IntervalScalar):
            return libmp.mpf_le(self.lo, x.lo) and libmp.mpf_le(x.hi, self.hi)
        if isinstance(x, QSqrt3):
            if x.q != 0:
                return _qsqrt3_in(self, x)
            x = x.p
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(x, Fraction):
            lo_ok = self.lo == _NINF or mpf_to_fraction(self.lo) <= x
            hi_ok = self.hi == _INF or x <= mpf_to_fraction(self.hi)
            return lo_ok and hi_ok
        if isinstance(x, float):
            return self.contains(Fraction(x))
        raise TypeError(f"cannot test membership of {type(x).__name__}")

    __contains__ = contains

    def overlaps(self, other: IntervalScalar) -> bool:
        return libmp.mpf_le(self.lo, other.hi) and libmp.mpf_le(other.lo, self.hi)

    def is_positive(self) -> bool:
        return libmp.mpf_gt(self.lo, _ZERO)

    def is_negative(self) -> bool:
        return libmp.mpf_lt(self.hi, _ZERO)

    def is_nonnegative(self) -> bool:
        return libmp.mpf_ge(self.lo, _ZERO)

    def is_nonpositive(self) -> bool:
        return libmp.mpf_le(self.hi, _ZERO)

    def contains_zero(self) -> bool:
        return libmp.mpf_le(self.lo, _ZERO) and libmp.mpf_ge(self.hi, _ZERO)

    def with_precision(self, prec: int) -> IntervalScalar:
        return IntervalScalar._raw(
            libmp.mpf_pos(self.lo, prec, FLOOR), libmp.mpf_pos(self.hi, prec, CEIL), prec
        )

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> IntervalScalar:
        if isinstance(other, IntervalScalar):
            return other
        if isinstance(other, (int, Fraction, QSqrt3)):
            return IntervalScalar.exact(other, self.prec)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other) -> IntervalScalar:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = max(self.prec, other.prec)
        return IntervalScalar._raw(
            libmp.mpf_add(self.lo, other.lo, p, FLOOR), libmp.mpf_add(self.hi, other.hi, p, CEIL), p
        )

    __radd__ = __add__

    def __neg__(self) -> IntervalScalar:
        return IntervalScalar._raw(libmp.mpf_neg(self.hi), libmp.mpf_neg(self.lo), self.prec)

    def __sub__(self, other) -> IntervalScalar:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = max(self.prec, other.prec)
        return IntervalScalar._raw(
            libmp.mpf_sub(self.lo, other.hi, p, FLOOR), libmp.mpf_sub(self.hi, other.lo, p, CEIL), p
        )

    def __rsub__(self, other) -> IntervalScalar:
        return self._coerce(other) - self

    def __mul__(self, other) -> IntervalScalar:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = max(self.prec, other.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        mul = libmp.mpf_mul
        if libmp.mpf_ge(a, _ZERO) and libmp.mpf_ge(c, _ZERO):
            return IntervalScalar._raw(mul(a, c, p, FLOOR), mul(b, d, p, CEIL), p)
        if libmp.mpf_le(b, _ZERO) and libmp.mpf_le(d, _ZERO):
            return IntervalScalar._raw(mul(b, d, p, FLOOR), mul(a, c, p, CEIL), p)
        lows = [_safe_mul(x, y, p, FLOOR) for x, y in ((a, c), (a, d), (b, c), (b, d))]
        highs = [_safe_mul(x, y, p, CEIL) for x, y in ((a, c), (a, d), (b, c), (b, d))]
        return IntervalScalar._raw(_mpf_min(lows), _mpf_max(highs), p)

    __rmul__ = __mul__

    def square(self) -> IntervalScalar:
        p = self.prec
        lo, hi = self.lo, self.hi
        if libmp.mpf_ge(lo, _ZERO):
            return IntervalScalar._raw(libmp.mpf_mul(lo, lo, p, FLOOR), libmp.mpf_mul(hi, hi, p, CEIL), p)
        if libmp.mpf_le(hi, _ZERO):
            return IntervalScalar._raw(libmp.mpf_mul(hi, hi, p, FLOOR), libmp.mpf_mul(lo, lo, p, CEIL), p)
        top = _mpf_max([libmp.mpf_mul(lo, lo, p, CEIL), libmp.mpf_mul(hi, hi, p, CEIL)])
        return IntervalScalar._raw(_ZERO, top, p)

    def __pow__(self, n: int) -> IntervalScalar:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n == 0:
            return IntervalScalar.exact(1, self.prec)
        if n == 1:
            return self
        if n % 2 == 0:
            return (self ** (n // 2)).square()
        return (self ** (n - 1)) * self

    def reciprocal(self) -> IntervalScalar:
        p = self.prec
        if self.contains_zero():
            return IntervalScalar.entire(p)
        one = libmp.fone
        return IntervalScalar._raw(
            libmp.mpf_div(one, self.hi, p, FLOOR), libmp.mpf_div(one, self.lo, p, CEIL), p
        )

    def __truediv__(self, other) -> IntervalScalar:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other.contains_zero():
            return IntervalScalar.entire(max(self.prec, other.prec))
        p = max(self.prec, other.prec)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        div = libmp.mpf_div
        pairs = ((a, c), (a, d), (b, c), (b, d))
        lows = [div(x, y, p, FLOOR) for x, y in pairs]
        highs = [div(x, y, p, CEIL) for x, y in pairs]
        return IntervalScalar._raw(_mpf_min(lows), _mpf_max(highs), p)

    def __rtruediv__(self, other) -> IntervalScalar:
        return self._coerce(other) / self

    def sqrt(self) -> IntervalScalar:
        """Square root of the nonnegative part (negative lower bounds clip to 0)."""
        p = self.prec
        if libmp.mpf_lt(self.hi, _ZERO):
            raise ValueError("square root of a negative interval")
        lo = self.lo if libmp.mpf_gt(self.lo, _ZERO) else _ZERO
        return IntervalScalar._raw(libmp.mpf_sqrt(lo, p, FLOOR), libmp.mpf_sqrt(self.hi, p, CEIL), p)

    def hull(self, other: IntervalScalar) -> IntervalScalar:
        p = max(self.prec, other.prec)
        return IntervalScalar._raw(_mpf_min([self.lo, other.lo]), _mpf_max([self.hi, other.hi]), p)

    def intersect(self, other: IntervalScalar) -> IntervalScalar | None:
        lo = _mpf_max([self.lo, other.lo])
        hi = _mpf_min([self.hi, other.hi])
        if libmp.mpf_gt(lo, hi):
            return None
        return IntervalScalar._raw(lo, hi, max(self.prec, other.prec))

    def clip_below(self, floor_value) -> IntervalScalar:
        """Intersect with ``[floor_value, +inf)``; the caller guarantees overlap."""
        f = self._to_mpf(floor_value, self.prec, FLOOR)
        lo = self.lo if libmp.mpf_ge(self.lo, f) else f
        hi = self.hi if libmp.mpf_ge(self.hi, lo) else lo
        return IntervalScalar._raw(lo, hi, self.prec)


def _safe_mul(x, y, p, rnd):
    if x == _ZERO or y == _ZERO:
        return _ZERO
    return libmp.mpf_mul(x, y, p, rnd)


def _mpf_min(values):
    best = values[0]
    for v in values[1:]:
        if libmp.mpf_lt(v, best):
            best = v
    return best


def _mpf_max(values):
    best = values[0]
    for v in values[1:]:
        if libmp.mpf_gt(v, best):
            best = v
    return best


def _qsqrt3_in(iv: IntervalScalar, x: QSqrt3) -> bool:
    """Exact membership of ``p + q sqrt 3`` via exact sign tests."""
    lo_ok = iv.lo == _NINF or (x - mpf_to_fraction(iv.lo)).sign() >= 0
    hi_ok = iv.hi == _INF or (x - mpf_to_fraction(iv.hi)).sign() <= 0
    return lo_ok and hi_ok


def enclose(value, prec: int = DEFAULT_PRECISION) -> IntervalScalar:
    """Enclosure of an exact scalar or pass-through of an interval."""
    if isinstance(value, IntervalScalar):
        return value
    if hasattr(value, "enclosure"):
        return value.enclosure(prec)
    return IntervalScalar.exact(value, prec)
