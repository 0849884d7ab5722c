"""Search for pairs of equal center distances.

Candidates are distance pairs whose float enclosures overlap at every one
of a batch of random shapes.  A candidate is confirmed by exact comparison
at random rational triangles when both distances are free of the area S,
and by overlap of 256-bit enclosures at 50 shapes otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..centers.catalog import coordinate_triple
from ..centers.points import PointTable, midpoint_check
from ..errors import DegenerateCenter
from ..shapespace import TriangleShape, random_sample, rational_sample
from .sampling import SampleEvaluator, precise_d2

EXACT_SHAPES = 20
INTERVAL_SHAPES = 50
INTERVAL_PRECISION = 256
SCREEN_SHAPES = 64
MIDPOINT_SHAPES = 50

Pair = Tuple[int, int]


@dataclass(frozen=True)
class ExactRational:
    sample_count: int

    def as_dict(self) -> dict:
        return {"kind": "exact", "samples": self.sample_count}


@dataclass(frozen=True)
class IntervalCoincidence:
    precision: int
    sample_count: int

    def as_dict(self) -> dict:
        return {"kind": "interval", "precision": self.precision, "samples": self.sample_count}


@dataclass(frozen=True)
class EqualityRecord:
    pair1: Pair
    pair2: Pair
    verification: Union[ExactRational, IntervalCoincidence]
    # (i, m, j) when X_m is the midpoint of X_i X_j, with its check result
    midpoint: Optional[Tuple[int, int, int]] = None
    midpoint_verified: Optional[bool] = None

    def describe(self) -> str:
        (a, b), (c, d) = self.pair1, self.pair2
        return f"D({a},{b}) = D({c},{d})"

    def as_dict(self) -> dict:
        out = {"pair1": list(self.pair1), "pair2": list(self.pair2),
               "verification": self.verification.as_dict()}
        if self.midpoint is not None:
            out["midpoint"] = list(self.midpoint)
            out["midpoint_verified"] = self.midpoint_verified
        return out


def s_free_center(k: int) -> bool:
    return all(p.s_coeff.is_zero() for p in coordinate_triple(k))


def s_free_pair(p: Pair) -> bool:
    return s_free_center(p[0]) and s_free_center(p[1])


def _screen(pairs: Sequence[Pair], seed: int) -> List[Tuple[Pair, Pair]]:
    ev = SampleEvaluator(random_sample(SCREEN_SHAPES, seed + 7919))
    lo = np.stack([ev.d2(*p)[0] for p in pairs])
    hi = np.stack([ev.d2(*p)[1] for p in pairs])
    # identically zero distances are not interesting duplicates
    positive = np.any(lo > 0, axis=1)
    out = []
    for x in range(len(pairs)):
        if not positive[x]:
            continue
        overlap = np.all((lo[x][None, :] <= hi[x + 1:]) & (lo[x + 1:] <= hi[x][None, :]), axis=1)
        for y in np.nonzero(overlap)[0]:
            out.append((pairs[x], pairs[x + 1 + int(y)]))
    return out


def _exact_equal(p: Pair, q: Pair, tables: Sequence[PointTable]) -> bool:
    try:
        return all(t.d2(*p) == t.d2(*q) for t in tables)
    except DegenerateCenter:
        return False


def _interval_equal(p: Pair, q: Pair, shapes: Sequence[TriangleShape]) -> bool:
    for shape in shapes:
        a = precise_d2(*p, shape, INTERVAL_PRECISION)
        b = precise_d2(*q, shape, INTERVAL_PRECISION)
        if a is None or b is None or not a.overlaps(b):
            return False
    return True


def _midpoint_of(p: Pair, q: Pair) -> Optional[Tuple[int, int, int]]:
    shared = set(p) & set(q)
    if len(shared) != 1:
        return None
    m = shared.pop()
    i = p[0] if p[1] == m else p[1]
    j = q[0] if q[1] == m else q[1]
    return (min(i, j), m, max(i, j))


def check_midpoint(i: int, m: int, j: int, count: int = MIDPOINT_SHAPES, seed: int = 0) -> bool:
    """Exact check that X_m bisects X_i X_j at random rational triangles."""
    return all(midpoint_check(i, m, j, s.sides) for s in rational_sample(count, seed + 101))


def detect_equalities(indices: Sequence[int] = tuple(range(1, 21)), seed: int = 0) -> List[EqualityRecord]:
    """Every pair of equal distances D(a, b) = D(c, d) among the given centers."""
    idx = sorted(set(indices))
    pairs = list(combinations(idx, 2))
    candidates = _screen(pairs, seed)
    exact_tables = [PointTable(s.sides) for s in rational_sample(EXACT_SHAPES, seed)]
    interval_shapes = random_sample(INTERVAL_SHAPES, seed + 31)
    out = []
    for p, q in candidates:
        if s_free_pair(p) and s_free_pair(q):
            if not _exact_equal(p, q, exact_tables):
                continue
            how = ExactRational(EXACT_SHAPES)
        else:
            if not _interval_equal(p, q, interval_shapes):
                continue
            how = IntervalCoincidence(INTERVAL_PRECISION, INTERVAL_SHAPES)
        mid = _midpoint_of(p, q)
        verified = check_midpoint(*mid, seed=seed) if mid is not None else None
        if mid is not None and not verified:
            mid = verified = None
        out.append(EqualityRecord(p, q, how, mid, verified))
    return out


def exact_identity_holds(n: int, i: int, j: int, k2, count: int = EXACT_SHAPES, seed: int = 0) -> bool:
    """D(n,i)^2 = k2 D(n,j)^2 exactly at random rational triangles."""
    for s in rational_sample(count, seed + 53):
        t = PointTable(s.sides, indices=sorted({n, i, j}))
        if t.d2(n, i) != t.d2(n, j) * k2:
            return False
    return True
