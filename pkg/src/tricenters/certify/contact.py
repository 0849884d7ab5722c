"""Certificates for claims that hold with equality at an isolated interior point.

When ``F = num - k^2 den`` touches zero on a mirror line of shape space
(isosceles triangles), boxes around the touching point never get a strict
sign.  There F is even in the distance x from the mirror, so with y = x^2 it
becomes G(y, w), and

    G(0, w) <= 0 on [W0, W1]   and   dG/dy <= 0 on [0, Y] x [W0, W1]

give G <= 0 on the whole chart.  The first condition is univariate and is
settled exactly; the second is an ordinary box cover.

The mirror charts are those of :mod:`.charts`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..algebra.poly import Poly3
from ..algebra.qfield import QSqrt3
from ..algebra.roots import isolate_real_roots, refine, squarefree
from . import univariate as uv
from .bnb import CoverResult, cover
from .charts import chart_box_exact, chart_polynomial
from .evaluator import Kappa, SignTarget
from .objective import Bivariate

# range of w along each mirror inside shape space
MIRROR_RANGES = {"ab": (Fraction(0), Fraction(1)), "bc": (Fraction(1, 2), Fraction(1))}
SIZES = ((Fraction(1, 2 ** 5), Fraction(1, 2 ** 8)), (Fraction(1, 2 ** 7), Fraction(1, 2 ** 12)),
         (Fraction(1, 2 ** 9), Fraction(1, 2 ** 16)))


def edge_polynomial(G: Bivariate) -> List[QSqrt3]:
    """h(w) = G(0, w)."""
    deg = max((k for (j, k) in G.coeffs if j == 0), default=0)
    h = [QSqrt3.ZERO] * (deg + 1)
    for (j, k), c in G.coeffs.items():
        if j == 0:
            h[k] = c
    return uv.strip(h)


@dataclass
class Chart:
    """A certified neighbourhood of a touching point on a mirror."""

    mirror: str
    w_lo: Fraction
    w_hi: Fraction
    y_hi: Fraction
    touch: float
    derivative_cover: Optional[CoverResult] = None

    def covers(self, box) -> bool:
        """True when the (u, c) box maps into the chart."""
        y0, y1, w0, w1 = chart_box_exact(box, self.mirror)
        return y1 <= self.y_hi and self.w_lo <= w0 and w1 <= self.w_hi

    def box(self):
        return (Fraction(0), self.y_hi, self.w_lo, self.w_hi)

    def as_dict(self) -> dict:
        return {"mirror": self.mirror, "w_lo": str(self.w_lo), "w_hi": str(self.w_hi),
                "y_hi": str(self.y_hi), "touch": repr(self.touch)}


def _dyadic_floor(x: Fraction, bits: int) -> Fraction:
    n = (x.numerator * 2 ** bits) // x.denominator
    return Fraction(n, 2 ** bits)


def _touch_points(h: List[QSqrt3], lo: Fraction, hi: Fraction) -> List[Fraction]:
    """Midpoints of tight enclosures of the roots of h inside (lo, hi)."""
    if len(h) <= 1:
        return []
    N = squarefree(uv.norm(h))
    out = []
    for r in isolate_real_roots(N):
        r = refine(N, r, Fraction(1, 2 ** 80))
        m = r.midpoint()
        if lo < m < hi:
            # keep roots of h itself, not of its conjugate
            v = abs(float(uv.evaluate(h, m)))
            scale = max(abs(float(c)) for c in h)
            if v <= 1e-12 * scale:
                out.append(m)
    return out


def build_charts(F: Poly3, max_boxes: int = 50000) -> List[Chart]:
    """Charts around every touching point of F on the two mirrors."""
    charts = []
    for mirror, (lo, hi) in MIRROR_RANGES.items():
        G = chart_polynomial(F, mirror)
        h = edge_polynomial(G)
        Gy = G.derivative(0)
        target = SignTarget({"num": Gy}, Kappa.zero())
        for touch in _touch_points(h, lo, hi):
            for half, y_hi in SIZES:
                w_lo = _dyadic_floor(touch - half, 20)
                w_hi = _dyadic_floor(touch + half, 20) + Fraction(1, 2 ** 20)
                if w_lo <= lo or w_hi >= hi:
                    continue
                if not uv.nonpositive_on(h, w_lo, w_hi):
                    continue
                res = cover(target, (Fraction(0), y_hi, w_lo, w_hi), max_subdivisions=max_boxes)
                if res.status == "proved":
                    charts.append(Chart(mirror, w_lo, w_hi, y_hi, float(touch), res))
                    break
    return charts


def replay_chart(F: Poly3, chart: Chart, leaves) -> bool:
    """Re-derive the chart conditions from F and re-check the recorded boxes."""
    from .bnb import exact_upper_nonpositive
    G = chart_polynomial(F, chart.mirror)
    h = edge_polynomial(G)
    if not uv.nonpositive_on(h, chart.w_lo, chart.w_hi):
        return False
    Gy = G.derivative(0)
    return all(exact_upper_nonpositive(Gy, box) for box in leaves)
