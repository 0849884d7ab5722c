"""Mirror charts of shape space.

Swapping two equal sides maps a triangle to itself, so every objective is
even in the distance x from the mirror line.  Written in y = x^2 the
objective stays polynomial, and boxes straddling the mirror see its true
behaviour instead of a cancellation between u and c terms.

Two mirrors meet the canonical region:

* ``ab`` (a = b): sides (1 + x, 1 - x, w), chart coordinates (y, w);
* ``bc`` (b = c): sides (1, s + x, s - x), chart coordinates (y, s).

A (u, c) box maps into an enclosing chart box; since num and den are
homogeneous of the same degree, ratios and signs agree between the two.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from ..algebra.poly import Poly3
from .objective import Bivariate

MIRRORS = ("ab", "bc")

# needle, equilateral and flat isosceles corners in each chart
CHART_ANCHORS = {
    "ab": ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1, 9), Fraction(2, 3))),
    "bc": ((Fraction(1, 4), Fraction(1, 2)), (Fraction(0), Fraction(1)), (Fraction(0), Fraction(1, 2))),
}

GRID = 2.0 ** -51
U = 2.0 ** -53


def chart_polynomial(F: Poly3, mirror: str) -> Bivariate:
    """G(y, w) with y = x^2 for the given mirror."""
    one = Poly3.constant(1)
    x, w = Poly3.var(1), Poly3.var(2)
    if mirror == "ab":
        sub = F.evaluate(one + x, one - x, w)
    elif mirror == "bc":
        sub = F.evaluate(one, w + x, w - x)
    else:
        raise ValueError(f"unknown mirror {mirror!r}")
    if not isinstance(sub, Poly3):
        sub = Poly3.constant(sub)
    out = {}
    for (_, i, k), c in sub.terms.items():
        if i % 2:
            raise ValueError("polynomial is not symmetric across the mirror")
        out[(i // 2, k)] = c
    return Bivariate(out)


def chart_parts(num, den, mirror: str) -> Dict[str, Bivariate]:
    """Chart versions of the base and S parts of num and den."""
    return {
        "num": chart_polynomial(num.base, mirror),
        "num_s": chart_polynomial(num.s_coeff, mirror),
        "den": chart_polynomial(den.base, mirror),
        "den_s": chart_polynomial(den.s_coeff, mirror),
    }


def near_mirror(boxes: np.ndarray, mirror: str) -> np.ndarray:
    """Boxes within about one width of the mirror line."""
    u0, u1, c0, c1 = boxes[:, 0], boxes[:, 1], boxes[:, 2], boxes[:, 3]
    um, cm = 0.5 * (u0 + u1), 0.5 * (c0 + c1)
    span = (u1 - u0) + (c1 - c0)
    if mirror == "ab":
        return np.abs(cm - um) <= span
    return np.abs(2 * cm - 1 - um) <= 2 * span


def _down(x):
    x = x - np.abs(x) * 4 * U - 1e-300
    return np.floor(x / GRID) * GRID


def _up(x):
    x = x + np.abs(x) * 4 * U + 1e-300
    return np.ceil(x / GRID) * GRID


def _square_range(lo, hi):
    straddle = (lo <= 0) & (hi >= 0)
    m = np.maximum(lo * lo, hi * hi)
    n = np.where(straddle, 0.0, np.minimum(lo * lo, hi * hi))
    return n, m


def chart_boxes(boxes: np.ndarray, mirror: str) -> np.ndarray:
    """Dyadic chart boxes (y_lo, y_hi, w_lo, w_hi) enclosing (u, c) boxes.

    Bounds are widened outward past float rounding and snapped to a fixed
    dyadic grid so that centres and radii are exact floats.
    """
    u0, u1, c0, c1 = boxes[:, 0], boxes[:, 1], boxes[:, 2], boxes[:, 3]
    if mirror == "ab":
        # (1, b, c) = ((1 + b) / 2) (1 + x, 1 - x, w)
        b0, b1 = 1 + u0 - c1, 1 + u1 - c0
        x_lo = (1 - b1) / (1 + b1)
        x_hi = (1 - b0) / (1 + b0)
        w_lo = 2 * c0 / (1 + b1)
        w_hi = 2 * c1 / (1 + b0)
    else:
        # b + c = 1 + u, so s = (1 + u) / 2 and x = (1 + u - 2c) / 2
        x_lo = (1 + u0 - 2 * c1) / 2
        x_hi = (1 + u1 - 2 * c0) / 2
        w_lo = (1 + u0) / 2
        w_hi = (1 + u1) / 2
    x_lo, x_hi = _down(x_lo), _up(x_hi)
    y_lo, y_hi = _square_range(x_lo, x_hi)
    out = np.stack([_down(y_lo), _up(y_hi), _down(w_lo), _up(w_hi)], axis=1)
    out[:, 0] = np.maximum(out[:, 0], 0.0)
    return out


def chart_box_exact(box, mirror: str) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Exact rational enclosure of one (u, c) box in chart coordinates."""
    u0, u1, c0, c1 = (Fraction(v) for v in box)
    if mirror == "ab":
        b0, b1 = 1 + u0 - c1, 1 + u1 - c0
        x_lo, x_hi = (1 - b1) / (1 + b1), (1 - b0) / (1 + b0)
        w_lo, w_hi = 2 * c0 / (1 + b1), 2 * c1 / (1 + b0)
    else:
        x_lo, x_hi = (1 + u0 - 2 * c1) / 2, (1 + u1 - 2 * c0) / 2
        w_lo, w_hi = (1 + u0) / 2, (1 + u1) / 2
    if x_lo <= 0 <= x_hi:
        y_lo = Fraction(0)
    else:
        y_lo = min(x_lo * x_lo, x_hi * x_hi)
    return y_lo, max(x_lo * x_lo, x_hi * x_hi), w_lo, w_hi


def _dyadic_out(lo: Fraction, hi: Fraction, bits: int) -> Tuple[Fraction, Fraction]:
    scale = 2 ** bits
    n_lo = (lo.numerator * scale) // lo.denominator
    n_hi = -((-hi.numerator * scale) // hi.denominator)
    return Fraction(n_lo, scale), Fraction(n_hi, scale)


def chart_box_dyadic(box, mirror: str, bits: int = 64):
    """Outward dyadic rounding of :func:`chart_box_exact`."""
    y0, y1, w0, w1 = chart_box_exact(box, mirror)
    y0, y1 = _dyadic_out(y0, y1, bits)
    w0, w1 = _dyadic_out(w0, w1, bits)
    return max(y0, Fraction(0)), y1, w0, w1


def near_mirror_box(box, mirror: str) -> bool:
    u0, u1, c0, c1 = box
    um, cm = (u0 + u1) / 2, (c0 + c1) / 2
    span = (u1 - u0) + (c1 - c0)
    if mirror == "ab":
        return abs(cm - um) <= span
    return abs(2 * cm - 1 - um) <= 2 * span
