"""Branch-and-bound over boxes of shape space.

The search coordinates are (u, c) with sides (1, 1 + u - c, c), so u is the
flatness gap b + c - 1.  In these coordinates the eps-interior
{u >= eps, c <= 1 - eps} is bounded by axis-parallel lines and every point
with u > 0 and 2c > u is a genuine triangle; the canonical ordering
1 >= b >= c only cuts along the two mirror lines c = u and 2c = 1 + u,
across which the objective is symmetric.

``cover`` proves ``target <= 0`` on every box of a cover, recording one leaf
per box.  ``extremize`` brackets the sup or inf of num/den.

Boxes are 4-tuples of dyadic Fractions (u_lo, u_hi, c_lo, c_hi); they are
converted to floats for the batched tier, which is exact for dyadics.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf, sqrt
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.qfield import sign_of_sum_with_root
from .charts import CHART_ANCHORS, MIRRORS, chart_box_dyadic, chart_boxes, chart_parts, near_mirror, near_mirror_box
from .evaluator import Box, Kappa, SignTarget, chart_sigma
from .objective import SIGMA_UC, Bivariate
from .taylor import ANCHORS, U, FloatTaylor, _hi_nonpositive, _lo_nonnegative
from .taylor import center_bounds, exact_taylor, lower_crossing, range_bounds, upper_crossing

MIN_WIDTH = Fraction(1, 2 ** 44)


def dyadic_margin(eps) -> Fraction:
    """Largest power of two not exceeding eps."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("margin must lie in (0, 1)")
    m = Fraction(1, 2)
    while m > eps:
        m /= 2
    return m


def interior_root(eps) -> Box:
    """Root box covering the eps-interior: u in [m, 1], c in [m, 1 - m].

    m is the dyadic margin below eps, so the cover proves the claim on a
    region containing the eps-interior.
    """
    m = dyadic_margin(eps)
    return (m, Fraction(1), m, 1 - m)


def split(box: Box) -> Tuple[Box, Box]:
    """Halve the wider side; ties split u."""
    b0, b1, c0, c1 = box
    if b1 - b0 >= c1 - c0:
        m = (b0 + b1) / 2
        return (b0, m, c0, c1), (m, b1, c0, c1)
    m = (c0 + c1) / 2
    return (b0, b1, c0, m), (b0, b1, m, c1)


def center(box: Box) -> Tuple[Fraction, Fraction]:
    return (box[0] + box[1]) / 2, (box[2] + box[3]) / 2


def width(box: Box) -> Fraction:
    return max(box[1] - box[0], box[3] - box[2])


def outside_canonical(box: Box) -> bool:
    """True when every point of the box has b > 1 or c > b (a mirror image)."""
    u0, u1, c0, c1 = box
    return c1 < u0 or 2 * c0 > 1 + u1


def sides_at(u, c) -> Tuple[Fraction, Fraction, Fraction]:
    return Fraction(1), 1 + Fraction(u) - Fraction(c), Fraction(c)


def is_triangle_point(u, c) -> bool:
    a, b, c = sides_at(u, c)
    return b > 0 and c > 0 and a + b > c and b + c > a and a + c > b


def bc_bounds(box: Box) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Bounding box of a (u, c) box in (b, c) coordinates."""
    u0, u1, c0, c1 = box
    return 1 + u0 - c1, 1 + u1 - c0, c0, c1


# -- exact sign tests ------------------------------------------------------------

def exact_upper_nonpositive(poly: Bivariate, box: Box, sign: int = 1) -> bool:
    """Exact test that the Taylor-form upper bound of sign*poly on box is <= 0."""
    P, Q, _ = exact_taylor(poly, *box)
    hp = hq = 0
    for j, (prow, qrow) in enumerate(zip(P, Q)):
        for k, (p, q) in enumerate(zip(prow, qrow)):
            if not p and not q:
                continue
            if sign < 0:
                p, q = -p, -q
            if j == 0 and k == 0:
                hp += p
                hq += q
                continue
            s = sign_of_sum_with_root(Fraction(p), Fraction(q), Fraction(3))
            if j % 2 == 0 and k % 2 == 0:
                if s > 0:
                    hp += p
                    hq += q
            elif s:
                hp += s * p
                hq += s * q
    return sign_of_sum_with_root(Fraction(hp), Fraction(hq), Fraction(3)) <= 0


def exact_check(target: SignTarget, box: Box, precisions: Sequence[int]) -> Optional[str]:
    """Tier name that proves the box, or None.

    Boxes near a mirror are also tried in that mirror's chart; the tier
    name then carries the mirror, e.g. ``exact:ab``.
    """
    tier = _exact_plain(target, box, precisions)
    if tier is not None:
        return tier
    for mirror, sub in target.charts.items():
        if near_mirror_box(box, mirror):
            tier = _exact_plain(sub, chart_box_dyadic(box, mirror), precisions)
            if tier is not None:
                return f"{tier}:{mirror}"
    return None


def _exact_plain(target: SignTarget, box: Box, precisions: Sequence[int]) -> Optional[str]:
    comb = target._combined_poly()
    if comb is not None:
        return "exact" if exact_upper_nonpositive(comb, box, target.sign) else None
    for prec in precisions:
        rng, _ = target.exact_bounds(box, prec)
        if rng.is_nonpositive():
            return f"interval@{prec}"
    return None


def escalation(precision: int) -> List[int]:
    out = []
    p = precision
    while p <= 512:
        out.append(p)
        p *= 2
    return out or [precision]


# -- covering --------------------------------------------------------------------

@dataclass
class Leaf:
    box: Box
    verdict: str  # "sign", "outside" or "contact"
    tier: str = ""

    def key(self):
        return self.box


@dataclass
class CoverResult:
    status: str  # "proved", "refuted", "inconclusive"
    leaves: List[Leaf] = field(default_factory=list)
    frontier: List[Box] = field(default_factory=list)
    witness: Optional[Tuple[Fraction, Fraction]] = None
    subdivisions: int = 0
    evaluated: int = 0


def _float_boxes(boxes: List[Box]) -> np.ndarray:
    return np.array([[float(x) for x in bx] for bx in boxes], dtype=float)


def cover(target: SignTarget, root: Box,
          outside: Optional[Callable[[Box], bool]] = None,
          refute: Optional[Callable[[Tuple[Fraction, Fraction]], bool]] = None,
          charts: Sequence = (), precision: int = 128,
          max_subdivisions: int = 10 ** 6, batch: int = 1024) -> CoverResult:
    """Prove target <= 0 on every box (meeting the region) of a dyadic cover.

    Boxes are processed best-first by their float upper bound so that a
    violation, if any, is met early.  The set of leaves does not depend on
    the processing order because every decision is a function of the box.
    """
    result = CoverResult("proved")
    precs = escalation(precision)
    heap: List[Tuple[float, int, Box]] = [(0.0, 0, root)]
    seq = 1
    while heap:
        group = []
        while heap and len(group) < batch:
            group.append(heapq.heappop(heap)[2])
        live = []
        for bx in group:
            if outside is not None and outside(bx):
                result.leaves.append(Leaf(bx, "outside"))
            else:
                live.append(bx)
        if not live:
            continue
        lo, hi, clo, chi, hi0, _ = target.float_bounds(_float_boxes(live))
        result.evaluated += len(live)
        for idx, bx in enumerate(live):
            if hi[idx] <= 0:
                result.leaves.append(Leaf(bx, "sign", "float"))
                continue
            if refute is not None and clo[idx] > 0:
                pt = center(bx)
                if refute(pt):
                    result.status = "refuted"
                    result.witness = pt
                    return result
            tier = None
            if hi0[idx] <= 0 or width(bx) <= Fraction(1, 2 ** 20):
                tier = exact_check(target, bx, precs)
            if tier is not None:
                result.leaves.append(Leaf(bx, "sign", tier))
                continue
            chart_id = next((k for k, ch in enumerate(charts) if ch.covers(bx)), None)
            if chart_id is not None:
                result.leaves.append(Leaf(bx, "contact", f"chart{chart_id}"))
                continue
            if result.subdivisions >= max_subdivisions or width(bx) <= MIN_WIDTH:
                result.frontier.append(bx)
                continue
            result.subdivisions += 1
            for child in split(bx):
                heapq.heappush(heap, (-float(hi[idx]), seq, child))
                seq += 1
    if result.frontier:
        result.status = "inconclusive"
    result.leaves.sort(key=Leaf.key)
    result.frontier.sort()
    return result


# -- extremes of the ratio -------------------------------------------------------

@dataclass
class ExtremeResult:
    side: str
    lower: float  # bracket on the extreme value of the squared ratio
    upper: float
    argument: Optional[Tuple[Fraction, Fraction]]
    from_seed: bool
    evaluated: int
    subdivisions: int
    converged: bool


class RatioBounds:
    """Batched enclosures of num/den over boxes."""

    def __init__(self, parts, sigma: Bivariate = SIGMA_UC, anchors=ANCHORS):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}
        self.s_free = "num_s" not in self.parts and "den_s" not in self.parts
        self.charts: dict = {}
        if self.s_free:
            self.fn = FloatTaylor(self.parts["num"], anchors)
            self.fd = FloatTaylor(self.parts["den"], anchors)
        else:
            self.tn = SignTarget({k: v for k, v in self.parts.items() if k in ("num", "num_s")},
                                 Kappa.zero(), sigma=sigma, anchors=anchors)
            self.td = SignTarget({("num" if k == "den" else "num_s"): v
                                  for k, v in self.parts.items() if k in ("den", "den_s")},
                                 Kappa.zero(), sigma=sigma, anchors=anchors)

    @classmethod
    def for_objective(cls, obj) -> RatioBounds:
        rb = cls(obj.parts)
        for mirror in MIRRORS:
            rb.charts[mirror] = cls(chart_parts(obj.num, obj.den, mirror), chart_sigma(mirror),
                                    CHART_ANCHORS[mirror])
        return rb

    def _taylor(self, boxes: np.ndarray):
        bm = 0.5 * (boxes[:, 0] + boxes[:, 1])
        rb = 0.5 * (boxes[:, 1] - boxes[:, 0])
        cm = 0.5 * (boxes[:, 2] + boxes[:, 3])
        rc = 0.5 * (boxes[:, 3] - boxes[:, 2])
        Tn, En = self.fn.shift(bm, rb, cm, rc)
        Td, Ed = self.fd.shift(bm, rb, cm, rc)
        if Tn.shape != Td.shape:
            shape = (Tn.shape[0], max(Tn.shape[1], Td.shape[1]), max(Tn.shape[2], Td.shape[2]))
            Tn, En, Td, Ed = (_pad(A, shape) for A in (Tn, En, Td, Ed))
        return Tn, En, Td, Ed

    def bounds(self, boxes: np.ndarray, side: str):
        """Per box: (bound, center_lo, center_hi) where bound is an upper
        bound of the ratio (side 'sup') or a lower bound (side 'inf')."""
        bound, c_lo, c_hi = self._plain(boxes, side)
        for mirror, sub in self.charts.items():
            mask = near_mirror(boxes, mirror)
            if not mask.any():
                continue
            b2, _, _ = sub._plain(chart_boxes(boxes[mask], mirror), side)
            if side == "sup":
                bound[mask] = np.minimum(bound[mask], b2)
            else:
                bound[mask] = np.maximum(bound[mask], b2)
        return bound, c_lo, c_hi

    def _plain(self, boxes: np.ndarray, side: str):
        K = boxes.shape[0]
        if not self.s_free:
            nlo, nhi, nclo, nchi, _, _ = self.tn.float_bounds(boxes)
            dlo, dhi, dclo, dchi, _, _ = self.td.float_bounds(boxes)
            return self._naive(nlo, nhi, dlo, dhi, nclo, nchi, dclo, dchi, side)
        Tn, En, Td, Ed = self._taylor(boxes)
        nlo, nhi = range_bounds(Tn, En)
        dlo, dhi = range_bounds(Td, Ed)
        nclo, nchi = center_bounds(Tn, En)
        dclo, dchi = center_bounds(Td, Ed)
        with np.errstate(divide="ignore", invalid="ignore"):
            c_lo = np.where(dchi > 0, np.maximum(nclo, 0) / dchi * (1 - 4 * U), 0.0)
            c_hi = np.where(dclo > 0, nchi / dclo * (1 + 4 * U), inf)
        good = dlo > 0
        if side == "sup":
            with np.errstate(divide="ignore", invalid="ignore"):
                k_hi = np.where(good, np.maximum(nhi, 0) / np.where(good, dlo, 1) * (1 + 8 * U) + 1e-300, inf)
            out = np.full(K, inf)
            idx = np.nonzero(good)[0]
            if idx.size:
                kl = np.minimum(np.maximum(c_lo[idx], 0.0), k_hi[idx])
                k = upper_crossing(Tn[idx], En[idx], Td[idx], Ed[idx], kl, k_hi[idx])
                ok = _hi_nonpositive(Tn[idx], En[idx], Td[idx], Ed[idx], k, None, None)
                k = np.where(ok, k, k_hi[idx])
                ok2 = _hi_nonpositive(Tn[idx], En[idx], Td[idx], Ed[idx], k, None, None)
                out[idx] = np.where(ok2, k, inf)
            return out, c_lo, c_hi
        out = np.zeros(K)
        idx = np.nonzero(good)[0]
        if idx.size:
            k_lo = np.maximum(nlo[idx], 0) / dhi[idx] * (1 - 8 * U)
            kh = np.maximum(np.minimum(c_hi[idx], 1e300), k_lo)
            k = lower_crossing(Tn[idx], En[idx], Td[idx], Ed[idx], k_lo, kh)
            ok = _lo_nonnegative(Tn[idx], En[idx], Td[idx], Ed[idx], k, None, None)
            out[idx] = np.where(ok, k, 0.0)
        return out, c_lo, c_hi

    @staticmethod
    def _naive(nlo, nhi, dlo, dhi, nclo, nchi, dclo, dchi, side):
        with np.errstate(divide="ignore", invalid="ignore"):
            c_lo = np.where(dchi > 0, np.maximum(nclo, 0) / dchi * (1 - 4 * U), 0.0)
            c_hi = np.where(dclo > 0, nchi / dclo * (1 + 4 * U), inf)
            if side == "sup":
                bound = np.where(dlo > 0, np.maximum(nhi, 0) / dlo * (1 + 4 * U), inf)
            else:
                bound = np.where(dlo > 0, np.maximum(nlo, 0) / dhi * (1 - 4 * U), 0.0)
        return bound, c_lo, c_hi


def _pad(A, shape):
    out = np.zeros(shape)
    out[:, : A.shape[1], : A.shape[2]] = A
    return out


def extremize(obj, side: str, eps: Fraction, tolerance: float,
              seed: Optional[float] = None, max_subdivisions: int = 10 ** 6,
              batch: int = 512) -> ExtremeResult:
    """Bracket sup (side 'sup') or inf (side 'inf') of num/den over the eps-interior.

    ``obj`` is a compiled ratio objective.
    ``tolerance`` applies to the square root of the ratio.  ``seed`` is a
    value known to be approached by the ratio (a boundary limit), used as the
    initial incumbent.
    """
    rb = RatioBounds.for_objective(obj)
    sup = side == "sup"
    best = seed if seed is not None else (-inf if sup else inf)
    best_arg = None
    from_seed = seed is not None
    evaluated = 0
    subdivisions = 0

    def close_enough(lo_v, hi_v):
        if hi_v == inf or lo_v == -inf:
            return False
        lo_v, hi_v = max(lo_v, 0.0), max(hi_v, 0.0)
        return sqrt(hi_v) - sqrt(lo_v) <= 0.9 * tolerance

    def evaluate(boxes):
        nonlocal best, best_arg, from_seed, evaluated
        live = [bx for bx in boxes if not outside_canonical(bx)]
        if not live:
            return []
        arr = _float_boxes(live)
        bound, c_lo, c_hi = rb.bounds(arr, side)
        evaluated += len(live)
        out = []
        for i, bx in enumerate(live):
            pt = center(bx)
            if is_triangle_point(*pt):
                v = c_lo[i] if sup else c_hi[i]
                if (sup and v > best) or (not sup and v < best):
                    best, best_arg, from_seed = float(v), pt, False
            out.append((float(bound[i]), bx))
        return out

    heap: List[Tuple[float, int, Box]] = []
    seq = 0
    for bnd, bx in evaluate([interior_root(eps)]):
        heap.append(((-bnd if sup else bnd), seq, bx))
        seq += 1
    heapq.heapify(heap)
    converged = False
    while True:
        # discard boxes that cannot improve on the incumbent
        if not heap:
            converged = True
            break
        top = -heap[0][0] if sup else heap[0][0]
        if sup:
            if top <= best or close_enough(best, top):
                converged = True
                break
        else:
            if top >= best or close_enough(top, best):
                converged = True
                break
        if subdivisions >= max_subdivisions:
            break
        group = []
        while heap and len(group) < batch:
            key, _, bx = heapq.heappop(heap)
            val = -key if sup else key
            if (sup and val <= best) or (not sup and val >= best):
                continue
            group.append(bx)
        children = []
        for bx in group:
            if width(bx) <= MIN_WIDTH:
                continue
            subdivisions += 1
            children.extend(split(bx))
        for bnd, bx in evaluate(children):
            if (sup and bnd > best) or (not sup and bnd < best):
                heapq.heappush(heap, ((-bnd if sup else bnd), seq, bx))
                seq += 1
    remaining = [(-k if sup else k) for k, _, _ in heap]
    if sup:
        upper = max([best] + remaining)
        lower = best
    else:
        lower = min([best] + remaining)
        upper = best
    return ExtremeResult(side, lower, upper, best_arg, from_seed, evaluated, subdivisions, converged)
