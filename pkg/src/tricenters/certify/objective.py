"""Ratio problems compiled to polynomials on shape space.

For a hub n and centers i, j,

    D(n,i)^2 / D(n,j)^2 = N_ni s_j^2 / (N_nj s_i^2)

where ``N`` is the distance numerator and ``s`` a coordinate sum.  Both
sides are S-linear and homogeneous of equal degree, and symmetric in
(a, b, c), so setting a = 1 loses nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Dict, Tuple

import numpy as np

from ..algebra.evaluate import eval_exact, eval_interval
from ..algebra.interval import IntervalScalar
from ..algebra.poly import Poly3
from ..algebra.qfield import QSqrt3
from ..algebra.slinear import SIGMA, SLinearPoly
from ..algebra.tower import SurdValue
from ..centers.catalog import check_index, coordinate_sum
from ..centers.points import distance_numerator

Key = Tuple[int, int]


@dataclass(frozen=True)
class RatioProblem:
    """The ratio D(hub, num) / D(hub, den)."""

    hub: int
    num: int
    den: int

    def __post_init__(self):
        for x in (self.hub, self.num, self.den):
            check_index(x)
        if self.hub in (self.num, self.den):
            raise ValueError("the hub must differ from both other centers")

    def __str__(self) -> str:
        return f"D({self.hub},{self.num})/D({self.hub},{self.den})"

    @property
    def trivial(self) -> bool:
        return self.num == self.den


class Bivariate:
    """Polynomial in two variables with coefficients in Q(sqrt 3)."""

    __slots__ = ("coeffs", "db", "dc", "_cache")

    def __init__(self, coeffs: Dict[Key, QSqrt3]):
        self.coeffs = {k: QSqrt3.coerce(v) for k, v in coeffs.items() if v}
        self.db = max((j for j, _ in self.coeffs), default=0)
        self.dc = max((k for _, k in self.coeffs), default=0)
        self._cache: dict = {}

    @classmethod
    def from_poly3(cls, p: Poly3) -> Bivariate:
        return cls(p.specialize_a())

    @classmethod
    def from_poly3_uc(cls, p: Poly3) -> Bivariate:
        """Sides (1, 1 + u - c, c) as a polynomial in (u, c)."""
        one = Poly3.constant(1)
        u, c = Poly3.var(1), Poly3.var(2)
        sub = p.evaluate(one, one + u - c, c)
        if not isinstance(sub, Poly3):
            sub = Poly3.constant(sub)
        return cls(sub.specialize_a())

    def derivative(self, var: int = 0) -> Bivariate:
        out = {}
        for (j, k), v in self.coeffs.items():
            e = j if var == 0 else k
            if e:
                out[(j - 1, k) if var == 0 else (j, k - 1)] = v * e
        return Bivariate(out)

    def translate(self, x0, y0) -> Bivariate:
        """The polynomial p(x0 + x, y0 + y), exactly."""
        x0, y0 = Fraction(x0), Fraction(y0)
        key = ("translate", x0, y0)
        got = self._cache.get(key)
        if got is not None:
            return got
        px = [[Fraction(comb(j, i)) * x0 ** (j - i) for i in range(j + 1)] for j in range(self.db + 1)]
        py = [[Fraction(comb(k, i)) * y0 ** (k - i) for i in range(k + 1)] for k in range(self.dc + 1)]
        out: Dict[Key, QSqrt3] = {}
        for (j, k), v in self.coeffs.items():
            for i, a in enumerate(px[j]):
                if not a:
                    continue
                for l, b in enumerate(py[k]):
                    if b:
                        out[(i, l)] = out.get((i, l), QSqrt3.ZERO) + v * (a * b)
        got = Bivariate(out)
        self._cache[key] = got
        return got

    def is_zero(self) -> bool:
        return not self.coeffs

    def has_sqrt3(self) -> bool:
        return any(v.q for v in self.coeffs.values())

    def __add__(self, other: Bivariate) -> Bivariate:
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, QSqrt3.ZERO) + v
        return Bivariate(out)

    def scale(self, k) -> Bivariate:
        k = QSqrt3.coerce(k)
        return Bivariate({key: v * k for key, v in self.coeffs.items()})

    def __sub__(self, other: Bivariate) -> Bivariate:
        return self + other.scale(-1)

    def evaluate(self, b, c):
        total = QSqrt3.ZERO if isinstance(b, (int, Fraction)) else 0
        for (j, k), v in self.coeffs.items():
            total = total + v * (b ** j) * (c ** k)
        return total

    def dense_float(self) -> Tuple[np.ndarray, np.ndarray]:
        """(mid, rad): float coefficient matrix and a bound on |exact - mid|."""
        got = self._cache.get("float")
        if got is None:
            mid = np.zeros((self.db + 1, self.dc + 1))
            rad = np.zeros_like(mid)
            for (j, k), v in self.coeffs.items():
                if v.q:
                    iv = IntervalScalar.exact(v, 96)
                    lo, hi = float(iv.lower), float(iv.upper)
                    m = 0.5 * (lo + hi)
                    mid[j, k] = m
                    rad[j, k] = (hi - lo) + abs(m) * 2.0 ** -50
                else:
                    m = float(v.p)
                    mid[j, k] = m
                    rad[j, k] = abs(m) * 2.0 ** -52
            got = (mid, rad)
            self._cache["float"] = got
        return got

    def integer_form(self):
        """(L, P, Q) with coefficient (j, k) equal to (P[j][k] + Q[j][k] sqrt3) / L."""
        got = self._cache.get("int")
        if got is None:
            L = 1
            for v in self.coeffs.values():
                L = lcm(L, v.p.denominator, v.q.denominator)
            P = [[0] * (self.dc + 1) for _ in range(self.db + 1)]
            Q = [[0] * (self.dc + 1) for _ in range(self.db + 1)]
            for (j, k), v in self.coeffs.items():
                P[j][k] = int(v.p * L)
                Q[j][k] = int(v.q * L)
            got = (L, P, Q)
            self._cache["int"] = got
        return got

    def __repr__(self) -> str:
        return f"Bivariate(deg_b={self.db}, deg_c={self.dc}, terms={len(self.coeffs)})"


SIGMA_BC = Bivariate.from_poly3(SIGMA)
SIGMA_UC = Bivariate.from_poly3_uc(SIGMA)


@dataclass
class RatioObjective:
    """num / den = D(n,i)^2 / D(n,j)^2 as S-linear polynomials.

    ``parts`` holds the base and S coefficients of both as polynomials in
    the search coordinates (u, c), where the sides are (1, 1 + u - c, c).
    """

    problem: RatioProblem
    num: SLinearPoly
    den: SLinearPoly
    parts: Dict[str, Bivariate] = field(default_factory=dict)

    @property
    def s_free(self) -> bool:
        return self.num.is_s_free() and self.den.is_s_free()

    def ratio_exact(self, sides) -> SurdValue:
        n = eval_exact(self.num, sides)
        d = eval_exact(self.den, sides)
        return n / d

    def ratio_enclosure(self, sides, prec: int = 128) -> IntervalScalar:
        n = eval_interval(self.num, sides, prec)
        d = eval_interval(self.den, sides, prec)
        return n / d

    def num_den_enclosure(self, sides, prec: int = 128):
        return eval_interval(self.num, sides, prec), eval_interval(self.den, sides, prec)


@lru_cache(maxsize=None)
def compile_ratio(problem: RatioProblem) -> RatioObjective:
    n, i, j = problem.hub, problem.num, problem.den
    si, sj = coordinate_sum(i), coordinate_sum(j)
    num = distance_numerator(n, i) * (sj * sj)
    den = distance_numerator(n, j) * (si * si)
    # branch and bound works in (u, c) with u = b + c - 1
    parts = {
        "num": Bivariate.from_poly3_uc(num.base),
        "num_s": Bivariate.from_poly3_uc(num.s_coeff),
        "den": Bivariate.from_poly3_uc(den.base),
        "den_s": Bivariate.from_poly3_uc(den.s_coeff),
    }
    return RatioObjective(problem, num, den, parts)
