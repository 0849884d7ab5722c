"""Exact constants for inequality claims.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom
    atom   := INT | 'sqrt' '(' INT ')' | '(' expr ')' | NAME
            | 'root' '(' '[' INT (',' INT)* ']' ',' SELECTOR ')'

``root`` coefficients are in ascending powers (``[c0, c1, ..., ck]``).
Arithmetic stays inside a single quadratic field Q(sqrt d); a root constant
must stand alone.  Decimals are rejected so that claims stay exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Optional, Tuple, Union

import mpmath

from ..algebra.interval import IntervalScalar
from ..algebra.qfield import QSqrt3, sign_of_sum_with_root
from ..algebra.roots import RootInterval, RootSelector, horner, isolate_root, refine
from ..errors import ConstantParseError


def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = s^2 * d with d squarefree; returns (s, d)."""
    if n < 0:
        raise ConstantParseError("square root of a negative integer")
    if n == 0:
        return 0, 1
    s, d = 1, 1
    rest = n
    k = 2
    while k * k <= rest:
        while rest % (k * k) == 0:
            rest //= k * k
            s *= k
        if rest % k == 0:
            rest //= k
            d *= k
        k += 1
    return s, d * rest


@dataclass(frozen=True)
class QuadraticConstant:
    """``p + q*sqrt(d)`` with rational p, q and squarefree d (d = 1 iff q = 0)."""

    p: Fraction
    q: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        p, q, d = Fraction(self.p), Fraction(self.q), int(self.d)
        if d == 1:
            p, q = p + q, Fraction(0)
        if q == 0:
            d = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @classmethod
    def sqrt(cls, n: int) -> QuadraticConstant:
        s, d = _squarefree_split(n)
        if d == 1:
            return cls(Fraction(s))
        return cls(Fraction(0), Fraction(s), d)

    def _unify(self, other: QuadraticConstant) -> int:
        if self.d != 1 and other.d != 1 and self.d != other.d:
            raise ConstantParseError(f"cannot mix sqrt({self.d}) and sqrt({other.d})")
        return self.d if self.d != 1 else other.d

    def __add__(self, other):
        other = as_quadratic(other)
        d = self._unify(other)
        return QuadraticConstant(self.p + other.p, self.q + other.q, d)

    def __neg__(self):
        return QuadraticConstant(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-as_quadratic(other))

    def __mul__(self, other):
        other = as_quadratic(other)
        d = self._unify(other)
        return QuadraticConstant(self.p * other.p + self.q * other.q * d,
                                 self.p * other.q + self.q * other.p, d)

    def conjugate(self) -> QuadraticConstant:
        return QuadraticConstant(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def __truediv__(self, other):
        other = as_quadratic(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero constant")
        num = self * other.conjugate()
        return QuadraticConstant(num.p / n, num.q / n, num.d)

    def sign(self) -> int:
        return sign_of_sum_with_root(self.p, self.q, Fraction(self.d))

    def compare(self, x) -> int:
        """Exact sign of ``self - x`` for rational or same-field ``x``."""
        return (self - as_quadratic(x)).sign()

    def square(self) -> QuadraticConstant:
        return self * self

    def is_rational(self) -> bool:
        return self.q == 0

    def as_qsqrt3(self) -> Optional[QSqrt3]:
        if self.q == 0:
            return QSqrt3(self.p)
        if self.d == 3:
            return QSqrt3(self.p, self.q)
        return None

    def enclosure(self, prec: int = 128) -> IntervalScalar:
        iv = IntervalScalar.exact(self.p, prec)
        if self.q:
            root = IntervalScalar.exact(Fraction(self.d), prec).sqrt()
            iv = iv + root * self.q
        return iv

    def square_enclosure(self, prec: int = 128) -> IntervalScalar:
        return self.square().enclosure(prec)

    def __float__(self) -> float:
        with mpmath.workprec(80):
            return float(mpmath.mpf(self.p.numerator) / self.p.denominator
                         + mpmath.mpf(self.q.numerator) / self.q.denominator * mpmath.sqrt(self.d))

    def inside(self, lo: Fraction, hi: Fraction) -> bool:
        return self.compare(lo) >= 0 and self.compare(hi) <= 0

    def __str__(self) -> str:
        def rat(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        if self.q == 0:
            return rat(self.p)
        root = f"sqrt({self.d})"
        q = self.q
        if abs(q) == 1:
            qs = root
        elif abs(q).denominator == 1:
            qs = f"{abs(q).numerator}*{root}"
        else:
            qs = f"{abs(q).numerator}*{root}/{abs(q).denominator}" if abs(q).numerator != 1 else f"{root}/{abs(q).denominator}"
        if self.p == 0:
            return qs if q > 0 else f"-{qs}"
        return f"{rat(self.p)}{'+' if q > 0 else '-'}{qs}"


def as_quadratic(x) -> QuadraticConstant:
    if isinstance(x, QuadraticConstant):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticConstant(Fraction(x))
    raise TypeError(f"cannot combine {type(x).__name__} with a quadratic constant")


@dataclass(frozen=True)
class RootConstant:
    """A selected real root of an integer polynomial (ascending coefficients)."""

    coeffs: Tuple[int, ...]
    selector: str
    name: Optional[str] = None
    _cache: Dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "selector", str(RootSelector.parse(self.selector)))
        if not any(self.coeffs):
            raise ConstantParseError("root() of the zero polynomial")

    def interval(self, tolerance=Fraction(1, 2 ** 60)) -> RootInterval:
        tolerance = Fraction(tolerance)
        base = self._cache.get("root")
        if base is None:
            base = isolate_root(self.coeffs, self.selector, Fraction(1, 2 ** 40))
            self._cache["root"] = base
        if base.width <= tolerance:
            return base
        finer = refine(list(self.coeffs), base, tolerance)
        self._cache["root"] = finer
        return finer

    def enclosure(self, prec: int = 128) -> IntervalScalar:
        r = self.interval(Fraction(1, 2 ** (prec + 4)))
        return IntervalScalar(r.lo, r.hi, prec)

    def square_enclosure(self, prec: int = 128) -> IntervalScalar:
        e = self.enclosure(prec)
        return e.square()

    def sign(self) -> int:
        return self.compare(0)

    def compare(self, x) -> int:
        """Exact sign of ``self - x`` for rational ``x``."""
        x = Fraction(x)
        tol = Fraction(1, 2 ** 40)
        for _ in range(12):
            r = self.interval(tol)
            if r.exact:
                return (r.lo > x) - (r.lo < x)
            if x <= r.lo:
                return 1
            if x > r.hi:
                return -1
            # x in (lo, hi]: is it the root itself?
            if horner(list(self.coeffs), x) == 0:
                return 0
            tol /= 2 ** 20
        raise ArithmeticError("comparison did not resolve")

    def inside(self, lo: Fraction, hi: Fraction) -> bool:
        return self.compare(lo) >= 0 and self.compare(hi) <= 0

    def __float__(self) -> float:
        return float(self.interval().midpoint())

    def __str__(self) -> str:
        if self.name:
            return self.name
        return f"root([{','.join(str(c) for c in self.coeffs)}], {self.selector})"

    def expression(self) -> str:
        return f"root([{','.join(str(c) for c in self.coeffs)}], {self.selector})"


Constant = Union[QuadraticConstant, RootConstant]


def constant_enclosure(k: Constant, prec: int = 128) -> IntervalScalar:
    return k.enclosure(prec)


def k_squared_exact(k: Constant) -> Optional[QSqrt3]:
    """k^2 as an element of Q(sqrt 3) when it is one."""
    if isinstance(k, QuadraticConstant):
        return k.square().as_qsqrt3()
    return None


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_][A-Za-z0-9_\-]*)|(.))")


def _tokens(text: str):
    out = []
    pos = 0
    text = text.strip().replace("√", "sqrt").replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            raise ConstantParseError(f"decimals are not allowed in exact constants: {m.group(1)!r}")
        tok = m.group(2) or m.group(3) or m.group(4)
        if tok and not tok.isspace():
            out.append(tok)
        pos = m.end()
    return out


class _ConstParser:
    def __init__(self, text: str, names: Dict[str, Constant]):
        self.toks = _tokens(text)
        self.i = 0
        self.names = names

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ConstantParseError(f"expected {expected or 'more input'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Constant:
        v = self.expr()
        if self.peek() is not None:
            raise ConstantParseError(f"trailing input at {self.peek()!r}")
        return v

    @staticmethod
    def _arith(x, y, op):
        if isinstance(x, RootConstant) or isinstance(y, RootConstant):
            raise ConstantParseError("root constants cannot be combined arithmetically")
        return op(x, y)

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            v = self._arith(v, rhs, (lambda a, b: a + b) if op == "+" else (lambda a, b: a - b))
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            v = self._arith(v, rhs, (lambda a, b: a * b) if op == "*" else (lambda a, b: a / b))
        return v

    def factor(self):
        if self.peek() in ("+", "-"):
            op = self.take()
            v = self.factor()
            return v if op == "+" else self._arith(QuadraticConstant(0), v, lambda a, b: a - b)
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return QuadraticConstant(Fraction(int(tok)))
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "sqrt":
            self.take("(")
            n = self.take()
            if not n.isdigit():
                raise ConstantParseError("sqrt() takes a nonnegative integer")
            self.take(")")
            return QuadraticConstant.sqrt(int(n))
        if tok == "root":
            self.take("(")
            self.take("[")
            coeffs = [self._signed_int()]
            while self.peek() == ",":
                self.take()
                coeffs.append(self._signed_int())
            self.take("]")
            self.take(",")
            sel = self.take()
            self.take(")")
            try:
                return RootConstant(tuple(coeffs), sel)
            except ValueError as exc:
                raise ConstantParseError(str(exc)) from exc
        if tok in self.names:
            return self.names[tok]
        raise ConstantParseError(f"unexpected token {tok!r}")

    def _signed_int(self) -> int:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if not tok.isdigit():
            raise ConstantParseError(f"expected integer coefficient, got {tok!r}")
        return sign * int(tok)


def parse_constant(text: str, names: Optional[Dict[str, Constant]] = None) -> Constant:
    """Parse a claim constant; ``names`` maps identifiers such as ``C1`` to constants."""
    if names is None:
        names = named_constants()
    return _ConstParser(text, names).parse()


@lru_cache(maxsize=1)
def named_constants() -> Dict[str, RootConstant]:
    from ..analysis.table import root_constants
    return dict(root_constants())
