"""Real root isolation for univariate polynomials via Sturm sequences.

Polynomials are coefficient lists in ascending powers, ``[c0, c1, ..., cn]``
meaning ``c0 + c1 x + ... + cn x^n``.  All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence

from ..errors import NoSuchRoot

Poly1 = List[Fraction]


def _strip(p: Sequence) -> Poly1:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    return len(_strip(p)) - 1


def horner(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: Sequence, x: Fraction) -> int:
    v = horner(p, x)
    return (v > 0) - (v < 0)


def derivative(p: Sequence) -> Poly1:
    return [Fraction(k) * c for k, c in enumerate(p)][1:]


def primitive(p: Sequence) -> Poly1:
    """Positive multiple of ``p`` with coprime integer coefficients."""
    p = _strip(p)
    if not p:
        return []
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    return [Fraction(c // g) for c in ints]


def divmod_poly(num: Sequence, den: Sequence) -> tuple[Poly1, Poly1]:
    num = _strip(num)
    den = _strip(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    r = list(num)
    lead = den[-1]
    while len(r) >= len(den) and r:
        shift = len(r) - len(den)
        factor = r[-1] / lead
        q[shift] = factor
        for k, c in enumerate(den):
            r[shift + k] -= factor * c
        r = _strip(r)
    return _strip(q), r


def poly_gcd(p: Sequence, q: Sequence) -> Poly1:
    a, b = _strip(p), _strip(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree(p: Sequence) -> Poly1:
    p = primitive(p)
    g = poly_gcd(p, derivative(p))
    if len(g) <= 1:
        return p
    q, _ = divmod_poly(p, g)
    return primitive(q)


def sturm_sequence(p: Sequence) -> List[Poly1]:
    """Sturm chain of the square-free part of ``p`` (positive rescalings only)."""
    f0 = squarefree(p)
    seq = [f0, primitive(derivative(f0))]
    while len(seq[-1]) > 1:
        _, r = divmod_poly(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in primitive(r)])
    return seq


def sign_variations(seq: Sequence[Poly1], x: Fraction) -> int:
    signs = [s for s in (sign_at(f, x) for f in seq) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(seq: Sequence[Poly1], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in ``(lo, hi]``."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(p: Sequence) -> Fraction:
    p = _strip(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootInterval:
    """An isolating interval ``(lo, hi]`` holding exactly one real root.

    ``exact`` is set when the root is the rational number ``lo == hi``.
    """

    lo: Fraction
    hi: Fraction
    exact: bool = False

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def contains(self, x) -> bool:
        if self.exact:
            return Fraction(x) == self.lo
        return self.lo <= Fraction(x) <= self.hi


def isolate_real_roots(p: Sequence) -> List[RootInterval]:
    """Disjoint isolating intervals for all distinct real roots, ascending."""
    p = _strip(p)
    if not p:
        raise ValueError("the zero polynomial has no isolated roots")
    if len(p) == 1:
        return []
    seq = sturm_sequence(p)
    f0 = seq[0]
    bound = cauchy_bound(f0)
    out: List[RootInterval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count_roots(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            if sign_at(f0, hi) == 0:
                out.append(RootInterval(hi, hi, exact=True))
            else:
                out.append(RootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort(key=lambda r: r.lo)
    return out


def refine(p: Sequence, root: RootInterval, tolerance: Fraction) -> RootInterval:
    """Bisect an isolating interval of the square-free part down to ``tolerance``."""
    if root.exact or root.width <= tolerance:
        return root
    f0 = squarefree(p)
    lo, hi = root.lo, root.hi
    s_hi = sign_at(f0, hi)
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        s_mid = sign_at(f0, mid)
        if s_mid == 0:
            return RootInterval(mid, mid, exact=True)
        if s_mid == s_hi:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi)


_ORDINALS = {"first": 1, "second": 2, "third": 3, "fourth": 4, "fifth": 5}


@dataclass(frozen=True)
class RootSelector:
    """Which real root to pick.

    ``kind`` is one of ``"largest"``, ``"smallest"``, ``"smallest-positive"``,
    ``"positive"`` (the unique positive root) with ``k`` counting from the
    named end (``k=2, kind="largest"`` is the second largest root).
    """

    kind: str
    k: int = 1

    @classmethod
    def parse(cls, text: str) -> RootSelector:
        t = text.strip().lower().replace("_", "-").replace(" ", "-")
        if t in ("largest", "smallest", "smallest-positive", "positive"):
            return cls(t)
        m = re.fullmatch(r"(\w+?)(?:-|)(largest|smallest)", t)
        if m:
            word = m.group(1).rstrip("-")
            if word in _ORDINALS:
                return cls(m.group(2), _ORDINALS[word])
            num = re.fullmatch(r"(\d+)(?:st|nd|rd|th)?", word)
            if num:
                return cls(m.group(2), int(num.group(1)))
        raise ValueError(f"unknown root selector {text!r}")

    def __str__(self) -> str:
        if self.k == 1:
            return self.kind
        return f"{self.k}-{self.kind}"

    def choose(self, roots: Sequence[RootInterval]) -> RootInterval:
        if self.kind == "largest":
            if len(roots) >= self.k:
                return roots[-self.k]
        elif self.kind == "smallest":
            if len(roots) >= self.k:
                return roots[self.k - 1]
        elif self.kind in ("smallest-positive", "positive"):
            pos = [r for r in roots if r.lo >= 0 and (r.exact and r.lo > 0 or not r.exact)]
            # an isolating interval (lo, hi] with lo >= 0 holds a root > 0
            if self.kind == "positive" and len(pos) != 1:
                raise NoSuchRoot(f"expected exactly one positive root, found {len(pos)}")
            if len(pos) >= self.k:
                return pos[self.k - 1]
        raise NoSuchRoot(f"no real root matches selector {self}")


def _split_at_zero(p: Sequence, roots: List[RootInterval]) -> List[RootInterval]:
    """Ensure no isolating interval straddles 0, so sign-based selectors are exact."""
    seq = sturm_sequence(p)
    out = []
    for r in roots:
        if not r.exact and r.lo < 0 < r.hi:
            if sign_at(seq[0], Fraction(0)) == 0:
                out.append(RootInterval(Fraction(0), Fraction(0), exact=True))
            elif count_roots(seq, r.lo, Fraction(0)) == 1:
                out.append(RootInterval(r.lo, Fraction(0)))
            else:
                out.append(RootInterval(Fraction(0), r.hi))
        else:
            out.append(r)
    return out


def isolate_root(poly: Sequence, selector, tolerance=Fraction(1, 10**12)) -> RootInterval:
    """Certified enclosure of the selected real root with width <= tolerance."""
    if isinstance(selector, str):
        selector = RootSelector.parse(selector)
    p = _strip(poly)
    if not p:
        raise ValueError("polynomial is identically zero")
    roots = _split_at_zero(p, isolate_real_roots(p))
    chosen = selector.choose(roots)
    return refine(p, chosen, Fraction(tolerance))
