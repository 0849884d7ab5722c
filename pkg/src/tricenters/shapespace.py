"""Triangle shape space: sides (1, b, c) with 1 >= b >= c and b + c > 1.

Distance ratios are invariant under scaling and relabeling, so every
"for all triangles" question reduces to this compact 2-d region.  Its
boundary consists of the flat segment b + c = 1, the needle corner (1, 0)
and the equilateral corner (1, 1); these are only ever approached as limits.
The flat isosceles shape (1, 1/2, 1/2) gets its own family of paths because
limits there depend on the direction of approach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

import numpy as np

from .errors import NotATriangle

DYADIC_BITS = 30


@dataclass(frozen=True, order=True)
class TriangleShape:
    b: Fraction
    c: Fraction

    def __post_init__(self):
        b, c = Fraction(self.b), Fraction(self.c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if not (1 >= b >= c > 0 and b + c > 1):
            raise NotATriangle(f"({b}, {c}) is not a canonical shape")

    @property
    def sides(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (Fraction(1), self.b, self.c)

    @classmethod
    def from_sides(cls, x, y, z) -> TriangleShape:
        """Scale by 1/max and sort descending."""
        s = sorted((Fraction(x), Fraction(y), Fraction(z)), reverse=True)
        if s[2] <= 0 or s[0] >= s[1] + s[2]:
            raise NotATriangle(f"sides ({x}, {y}, {z}) violate the strict triangle inequality")
        return cls(s[1] / s[0], s[2] / s[0])

    def flat_gap(self) -> Fraction:
        return self.b + self.c - 1

    def corner_distance(self) -> float:
        return math.hypot(float(1 - self.b), float(1 - self.c))

    def __str__(self) -> str:
        return f"(1, {self.b}, {self.c})"


def canonicalize(sides: Sequence) -> TriangleShape:
    return TriangleShape.from_sides(*sides)


@dataclass(frozen=True)
class ShapeBox:
    """Axis-aligned box [b_lo, b_hi] x [c_lo, c_hi] with exact endpoints."""

    b_lo: Fraction
    b_hi: Fraction
    c_lo: Fraction
    c_hi: Fraction

    def __post_init__(self):
        for name in ("b_lo", "b_hi", "c_lo", "c_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.b_lo > self.b_hi or self.c_lo > self.c_hi:
            raise ValueError("empty box")

    @property
    def b_width(self) -> Fraction:
        return self.b_hi - self.b_lo

    @property
    def c_width(self) -> Fraction:
        return self.c_hi - self.c_lo

    @property
    def center(self) -> Tuple[Fraction, Fraction]:
        return (self.b_lo + self.b_hi) / 2, (self.c_lo + self.c_hi) / 2

    def split(self) -> Tuple[ShapeBox, ShapeBox]:
        """Bisect the wider side; ties split b."""
        if self.b_width >= self.c_width:
            m = (self.b_lo + self.b_hi) / 2
            return (ShapeBox(self.b_lo, m, self.c_lo, self.c_hi),
                    ShapeBox(m, self.b_hi, self.c_lo, self.c_hi))
        m = (self.c_lo + self.c_hi) / 2
        return (ShapeBox(self.b_lo, self.b_hi, self.c_lo, m),
                ShapeBox(self.b_lo, self.b_hi, m, self.c_hi))

    def contains(self, b, c) -> bool:
        return self.b_lo <= b <= self.b_hi and self.c_lo <= c <= self.c_hi

    def meets_region(self) -> bool:
        """True iff the box touches the closed canonical region."""
        return (self.b_hi + self.c_hi >= 1 and self.c_lo <= min(self.b_hi, 1)
                and self.b_lo <= 1)


ROOT_BOX = ShapeBox(Fraction(1, 2), Fraction(1), Fraction(0), Fraction(1))


def in_margin_region(b, c, margin) -> bool:
    return b + c - 1 > margin and math.hypot(float(1 - b), float(1 - c)) > margin


def grid_sample(resolution: int, margin=Fraction(1, 1000)) -> List[TriangleShape]:
    """Grid points (i/N, j/N) of the region away from the flat edge and the corner."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    margin = Fraction(margin)
    if not 0 < margin < Fraction(1, 4):
        raise ValueError("margin must lie in (0, 1/4)")
    N = resolution
    out = []
    for i in range(N // 2, N + 1):
        b = Fraction(i, N)
        for j in range(N - i, i + 1):
            c = Fraction(j, N)
            if c > 0 and in_margin_region(b, c, margin):
                out.append(TriangleShape(b, c))
    return out


def grid_resolution_for(count: int, margin=Fraction(1, 1000)) -> int:
    """Smallest resolution whose grid has at least ``count`` shapes."""
    N = max(2, int(math.sqrt(4 * count)))
    while len(grid_sample(N, margin)) < count:
        N += 1
    while N > 2 and len(grid_sample(N - 1, margin)) >= count:
        N -= 1
    return N


# 10,740 shapes is the scan size of the classical conjecture search.
CLASSICAL_SCAN_SIZE = 10_740


def random_sample(count: int, seed: int = 0, margin=Fraction(1, 1000)) -> List[TriangleShape]:
    """Deterministic uniform dyadic samples of the margin-shrunk region."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    scale = 1 << DYADIC_BITS
    margin = float(margin)
    out: List[TriangleShape] = []
    while len(out) < count:
        n = max(64, 2 * (count - len(out)))
        bi = rng.integers(scale // 2, scale, size=n, endpoint=True)
        ci = rng.integers(1, scale, size=n, endpoint=True)
        for x, y in zip(bi.tolist(), ci.tolist()):
            if y > x or x + y <= scale:
                continue
            b, c = Fraction(x, scale), Fraction(y, scale)
            if in_margin_region(b, c, margin):
                out.append(TriangleShape(b, c))
                if len(out) == count:
                    break
    return out


def rational_sample(count: int, seed: int = 0, max_denominator: int = 1000) -> List[TriangleShape]:
    """Seeded shapes with sides of unrelated random denominators.

    Meant for testing polynomial identities, where dyadic points would share
    too much structure.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    out: List[TriangleShape] = []
    while len(out) < count:
        q1, q2 = (int(q) for q in rng.integers(2, max_denominator, size=2, endpoint=True))
        b = Fraction(int(rng.integers(q1 // 2 + 1, q1, endpoint=True)), q1)
        c = Fraction(int(rng.integers(1, q2, endpoint=True)), q2)
        if c <= b and b + c > 1:
            out.append(TriangleShape(b, c))
    return out


# -- boundary limit families -------------------------------------------------

@dataclass(frozen=True)
class BoundaryPath:
    """Straight path t -> sides(t) with t -> 0+ approaching the boundary.

    ``base`` and ``slope`` give the three sides as ``base + slope * t``.
    """

    family: str
    parameter: Fraction
    base: Tuple[Fraction, Fraction, Fraction]
    slope: Tuple[Fraction, Fraction, Fraction]
    t_max: Fraction = Fraction(1, 16)

    @property
    def name(self) -> str:
        return f"{self.family}[{self.parameter}]"

    def sides(self, t) -> Tuple[Fraction, Fraction, Fraction]:
        t = Fraction(t)
        return tuple(p + q * t for p, q in zip(self.base, self.slope))

    def at(self, t) -> TriangleShape:
        return canonicalize(self.sides(t))

    def points(self, k_min: int = 4, k_max: int = 20) -> Iterator[Tuple[Fraction, TriangleShape]]:
        for k in range(k_min, k_max + 1):
            t = Fraction(1, 2 ** k)
            if t <= self.t_max:
                yield t, self.at(t)


def flat_path(mix) -> BoundaryPath:
    """b + c = 1 + t with c / (b + c) = mix, 0 < mix <= 1/2."""
    mix = Fraction(mix)
    if not 0 < mix <= Fraction(1, 2):
        raise ValueError("mix must lie in (0, 1/2]")
    t_max = min(Fraction(1, 16), mix / (1 - mix) / 2) if mix < Fraction(1, 2) else Fraction(1, 16)
    return BoundaryPath("flat", mix, (Fraction(1), 1 - mix, mix), (Fraction(0), 1 - mix, mix), t_max)


def needle_path(direction) -> BoundaryPath:
    """(1, 1 - direction*t, t): isosceles needle for direction 0."""
    lam = Fraction(direction)
    if not 0 <= lam < 1:
        raise ValueError("needle direction must lie in [0, 1)")
    return BoundaryPath("needle", lam, (Fraction(1), Fraction(1), Fraction(0)),
                        (Fraction(0), -lam, Fraction(1)), Fraction(1, 16))


def equilateral_path(direction=1) -> BoundaryPath:
    """(1, 1 - direction*t, 1 - t): direction 1 is the isosceles approach b = c."""
    lam = Fraction(direction)
    if not 0 <= lam <= 1:
        raise ValueError("equilateral direction must lie in [0, 1]")
    return BoundaryPath("equilateral", lam, (Fraction(1), Fraction(1), Fraction(1)),
                        (Fraction(0), -lam, Fraction(-1)), Fraction(1, 16))


def corner_path(slope) -> BoundaryPath:
    """(1, 1/2 + t, 1/2 + slope*t) leaving the flat isosceles shape (1, 1/2, 1/2)."""
    rho = Fraction(slope)
    if not -1 < rho <= 1:
        raise ValueError("corner slope must lie in (-1, 1]")
    half = Fraction(1, 2)
    return BoundaryPath("corner", rho, (Fraction(1), half, half), (Fraction(0), Fraction(1), rho),
                        Fraction(1, 16))


FLAT_MIXES = tuple(Fraction(k, 16) for k in (8, 6, 4, 2, 1))
NEEDLE_DIRECTIONS = tuple(Fraction(k, 4) for k in (0, 1, 2, 3))
EQUILATERAL_DIRECTIONS = tuple(Fraction(k, 4) for k in (4, 3, 2, 1, 0))
CORNER_SLOPES = tuple(Fraction(k, 2) for k in (2, 1, 0, -1))


def boundary_paths() -> List[BoundaryPath]:
    """The limit families at their default parameters."""
    return ([flat_path(m) for m in FLAT_MIXES]
            + [needle_path(d) for d in NEEDLE_DIRECTIONS]
            + [equilateral_path(d) for d in EQUILATERAL_DIRECTIONS]
            + [corner_path(r) for r in CORNER_SLOPES])


PathFactory = Callable[[Fraction], BoundaryPath]

FAMILIES = {
    "flat": (flat_path, (Fraction(1, 64), Fraction(1, 2))),
    "needle": (needle_path, (Fraction(0), Fraction(63, 64))),
    "equilateral": (equilateral_path, (Fraction(0), Fraction(1))),
    "corner": (corner_path, (Fraction(-63, 64), Fraction(1))),
}
