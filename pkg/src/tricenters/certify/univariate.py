"""Exact sign certificates for univariate polynomials over Q(sqrt 3).

A polynomial is a list of :class:`QSqrt3` coefficients, constant term first.
Its real roots are among those of the rational norm ``g * conj(g)``, so the
sign of ``g`` on an interval is decided by isolating the norm's roots and
testing one exact rational point in each gap between them.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from ..algebra.qfield import QSqrt3
from ..algebra.roots import RootInterval, isolate_real_roots, refine, squarefree
from ..algebra.roots import sign_at as _rsign

QPoly = List[QSqrt3]


def strip(g: Sequence[QSqrt3]) -> QPoly:
    g = [QSqrt3.coerce(c) for c in g]
    while g and not g[-1]:
        g.pop()
    return g


def evaluate(g: Sequence[QSqrt3], x) -> QSqrt3:
    acc = QSqrt3.ZERO
    for c in reversed(g):
        acc = acc * x + c
    return acc


def conjugate(g: Sequence[QSqrt3]) -> QPoly:
    return [QSqrt3(c.p, -c.q) for c in g]


def multiply(f: Sequence[QSqrt3], g: Sequence[QSqrt3]) -> QPoly:
    if not f or not g:
        return []
    out = [QSqrt3.ZERO] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = out[i + j] + a * b
    return strip(out)


def norm(g: Sequence[QSqrt3]) -> List[Fraction]:
    """``g * conj(g)`` as a rational polynomial."""
    prod = multiply(g, conjugate(g))
    assert all(not c.q for c in prod)
    return [c.p for c in prod]


def sign_at(g: Sequence[QSqrt3], x: Fraction) -> int:
    return evaluate(g, Fraction(x)).sign()


def _roots_in(N: List[Fraction], lo: Fraction, hi: Fraction) -> List[RootInterval]:
    """Disjoint enclosures of the roots of N in [lo, hi], each inside [lo, hi]."""
    if len(N) <= 1:
        return []
    f0 = squarefree(N)
    out = []
    for r in isolate_real_roots(f0):
        # a non-exact interval (l, h] holds its root strictly inside
        for end in (lo, hi):
            if not r.exact and r.lo < end < r.hi and _rsign(f0, end) == 0:
                r = RootInterval(end, end, exact=True)
        while not r.exact and (r.lo < lo < r.hi or r.lo < hi < r.hi):
            r = refine(f0, r, r.width / 2)
        if r.exact:
            if lo <= r.lo <= hi:
                out.append(r)
        elif r.lo >= lo and r.hi <= hi:
            out.append(r)
    for k in range(len(out) - 1):
        while out[k].hi >= out[k + 1].lo:
            a, b = out[k], out[k + 1]
            if not a.exact:
                out[k] = refine(f0, a, a.width / 2)
            if not b.exact:
                out[k + 1] = refine(f0, b, b.width / 2)
    return out


def sample_points(g: Sequence[QSqrt3], lo: Fraction, hi: Fraction) -> List[Fraction]:
    """Endpoints plus one rational point in each root-free gap of [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    roots = _roots_in(norm(g), lo, hi)
    points = [lo]
    left = lo
    for r in roots:
        right = r.lo
        if right > left:
            points.append((left + right) / 2)
        left = r.hi
    if hi > left:
        points.append((left + hi) / 2)
    points.append(hi)
    return points


def nonpositive_on(g: Sequence[QSqrt3], lo, hi) -> bool:
    """Exact test of ``g <= 0`` on the closed interval [lo, hi]."""
    g = strip(g)
    if not g:
        return True
    return all(sign_at(g, x) <= 0 for x in sample_points(g, lo, hi))


def nonnegative_on(g: Sequence[QSqrt3], lo, hi) -> bool:
    return nonpositive_on([-c for c in strip(g)], lo, hi)


def positive_on(g: Sequence[QSqrt3], lo, hi) -> bool:
    """Exact test of ``g > 0`` on [lo, hi]."""
    g = strip(g)
    if not g:
        return False
    N = norm(g)
    lo, hi = Fraction(lo), Fraction(hi)
    if _roots_in(N, lo, hi):
        return False
    return sign_at(g, lo) > 0


def divmod_q(f: Sequence[QSqrt3], g: Sequence[QSqrt3]):
    f, g = strip(f), strip(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    quo = [QSqrt3.ZERO] * max(len(f) - len(g) + 1, 1)
    lead = g[-1]
    while len(rem) >= len(g) and rem:
        shift = len(rem) - len(g)
        c = rem[-1] / lead
        quo[shift] = c
        for i, b in enumerate(g):
            rem[shift + i] = rem[shift + i] - c * b
        rem = strip(rem[:-1])
    return strip(quo), rem


def gcd(f: Sequence[QSqrt3], g: Sequence[QSqrt3]) -> QPoly:
    """Monic greatest common divisor over Q(sqrt 3)."""
    a, b = strip(f), strip(g)
    while b:
        _, r = divmod_q(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def cancel(f: Sequence[QSqrt3], g: Sequence[QSqrt3]):
    """Divide f and g by their common factor."""
    h = gcd(f, g)
    if len(h) <= 1:
        return strip(f), strip(g)
    return divmod_q(f, h)[0], divmod_q(g, h)[0]
