"""Sparse polynomials in the side lengths (a, b, c) over Q(sqrt 3)."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .qfield import QSqrt3

Exponent = Tuple[int, int, int]

# index permutations applied to exponent triples
_CYCLE = (1, 2, 0)  # f(a,b,c) -> f(b,c,a)


def _coerce(x) -> QSqrt3:
    return x if isinstance(x, QSqrt3) else QSqrt3(x)


class Poly3:
    """A polynomial in ``a, b, c`` stored as ``{(i, j, k): coefficient}``.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term dictionaries are equal.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, object] | None = None):
        clean: Dict[Exponent, QSqrt3] = {}
        if terms:
            for e, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, QSqrt3]) -> Poly3:
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c) -> Poly3:
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, index: int) -> Poly3:
        e = [0, 0, 0]
        e[index] = 1
        return cls({tuple(e): 1})

    # -- structure -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly3):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, QSqrt3)):
            return self == Poly3.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly3({self.to_string()})"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip("abc", e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def has_sqrt3(self) -> bool:
        return any(not c.is_rational for c in self.terms.values())

    # -- ring operations -------------------------------------------------
    def __add__(self, other) -> Poly3:
        if not isinstance(other, Poly3):
            if isinstance(other, (int, Fraction, QSqrt3)):
                other = Poly3.constant(other)
            else:
                return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly3._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Poly3:
        return Poly3._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly3:
        if isinstance(other, (int, Fraction, QSqrt3)):
            other = Poly3.constant(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly3:
        return (-self) + other

    def scale(self, k) -> Poly3:
        k = _coerce(k)
        if not k:
            return Poly3._raw({})
        return Poly3._raw({e: c * k for e, c in self.terms.items()})

    def __mul__(self, other) -> Poly3:
        if isinstance(other, (int, Fraction, QSqrt3)):
            return self.scale(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        out: Dict[Exponent, QSqrt3] = {}
        get = out.get
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2, k1 + k2)
                prod = c1 * c2
                prev = get(e)
                out[e] = prod if prev is None else prev + prod
        return Poly3._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly3:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = Poly3.constant(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitutions ---------------------------------------------------
    def permute(self, perm: Tuple[int, int, int]) -> Poly3:
        """Substitute variables: ``perm[k]`` is the variable replacing var k.

        ``permute((1, 2, 0))`` maps ``f(a, b, c)`` to ``f(b, c, a)``.
        """
        out = {}
        for e, c in self.terms.items():
            ne = [0, 0, 0]
            for k in range(3):
                ne[perm[k]] += e[k]
            out[tuple(ne)] = c
        return Poly3._raw(out)

    def cyclic(self) -> Poly3:
        return self.permute(_CYCLE)

    def diff(self, var: int) -> Poly3:
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                ne = list(e)
                ne[var] = k - 1
                out[tuple(ne)] = c * k
        return Poly3._raw(out)

    def evaluate(self, a, b, c):
        """Evaluate at arbitrary ring elements supporting + and *."""
        pa: dict = {}
        pb: dict = {}
        pc: dict = {}

        def power(cache, x, k):
            v = cache.get(k)
            if v is None:
                v = x ** k if k else 1
                cache[k] = v
            return v

        total = None
        for (i, j, k), coef in self.terms.items():
            term = coef
            if i:
                term = power(pa, a, i) * term
            if j:
                term = power(pb, b, j) * term
            if k:
                term = power(pc, c, k) * term
            total = term if total is None else total + term
        return total if total is not None else QSqrt3.ZERO

    def specialize_a(self) -> Dict[Tuple[int, int], QSqrt3]:
        """Set ``a = 1``; returns a bivariate dict ``{(j, k): coef}``."""
        out: Dict[Tuple[int, int], QSqrt3] = {}
        for (i, j, k), c in self.terms.items():
            prev = out.get((j, k))
            out[(j, k)] = c if prev is None else prev + c
        return {e: c for e, c in out.items() if c}

    def coefficients(self) -> Iterable[QSqrt3]:
        return self.terms.values()


A = Poly3.var(0)
B = Poly3.var(1)
C = Poly3.var(2)
ONE = Poly3.constant(1)
ZERO = Poly3()
