"""Box enclosures of sign targets ``s * (num - kappa * den)``.

``num`` and ``den`` may carry S parts (``num + num_s * S``).  The float tier
handles batches; the exact tier shifts one box with integer arithmetic and
assembles the range with outward-rounded intervals at a chosen precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np

from ..algebra.interval import IntervalScalar
from ..algebra.qfield import QSqrt3
from ..algebra.slinear import SIGMA
from .charts import CHART_ANCHORS, MIRRORS, chart_boxes, chart_parts, chart_polynomial, near_mirror
from .objective import SIGMA_UC, Bivariate
from .taylor import ANCHORS, U, FloatTaylor, center_bounds, combine, exact_taylor, range_bounds

Box = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass
class Kappa:
    """The squared constant: exact in Q(sqrt 3) when possible, else enclosed."""

    exact: Optional[QSqrt3]
    source: object = None  # constant whose square this is

    def enclosure(self, prec: int) -> IntervalScalar:
        if self.exact is not None:
            return IntervalScalar.exact(self.exact, prec)
        return self.source.square_enclosure(prec)

    def float_bounds(self) -> Tuple[float, float]:
        iv = self.enclosure(96)
        lo = float(np.nextafter(float(iv.lower), -np.inf))
        hi = float(np.nextafter(float(iv.upper), np.inf))
        return lo, hi

    @classmethod
    def zero(cls) -> Kappa:
        return cls(QSqrt3.ZERO)


def _float_box_arrays(boxes) -> Tuple[np.ndarray, ...]:
    arr = np.asarray(boxes, dtype=float)
    b_lo, b_hi, c_lo, c_hi = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
    bm = 0.5 * (b_lo + b_hi)
    rb = 0.5 * (b_hi - b_lo)
    cm = 0.5 * (c_lo + c_hi)
    rc = 0.5 * (c_hi - c_lo)
    return bm, rb, cm, rc


def _interval_range(values: Dict[Tuple[int, int], IntervalScalar], prec: int) -> IntervalScalar:
    zero = IntervalScalar.exact(0, prec)
    total = values.get((0, 0), zero)
    for (j, k), t in values.items():
        if (j, k) == (0, 0):
            continue
        if j % 2 == 0 and k % 2 == 0:
            total = total + t.hull(zero)
        else:
            m = max(abs(t.lower), abs(t.upper))
            total = total + IntervalScalar(-m, m, prec)
    return total


def exact_coefficients(poly: Bivariate, box: Box, prec: int) -> Dict[Tuple[int, int], IntervalScalar]:
    P, Q, scale = exact_taylor(poly, *box)
    out = {}
    for j, row in enumerate(P):
        for k, p in enumerate(row):
            q = Q[j][k]
            if p or q:
                out[(j, k)] = IntervalScalar.exact(QSqrt3(Fraction(p, scale), Fraction(q, scale)), prec)
    return out


class SignTarget:
    """Enclosures of ``sign * (num - kappa den)`` on boxes of the search plane."""

    def __init__(self, parts: Dict[str, Bivariate], kappa: Kappa, sign: int = 1,
                 sigma: Bivariate = SIGMA_UC, anchors=ANCHORS):
        self.parts = {k: v for k, v in parts.items() if not v.is_zero()}
        self.kappa = kappa
        self.sign = sign
        self.sigma = sigma
        self.anchors = anchors
        # mirror name -> SignTarget in chart coordinates, used near mirrors
        self.charts: Dict[str, SignTarget] = {}
        self.s_free = "num_s" not in self.parts and "den_s" not in self.parts
        self._float: Dict[str, FloatTaylor] = {}
        self._combined: Optional[Bivariate] = None
        self.k_lo, self.k_hi = kappa.float_bounds()

    def _ft(self, name: str) -> FloatTaylor:
        ft = self._float.get(name)
        if ft is None:
            poly = self.sigma if name == "sigma" else self.parts[name]
            ft = FloatTaylor(poly, self.anchors)
            self._float[name] = ft
        return ft

    def _shift_pair(self, n_name: str, d_name: str, arrays):
        Tn = En = Td = Ed = None
        if n_name in self.parts:
            Tn, En = self._ft(n_name).shift(*arrays)
        if d_name in self.parts:
            Td, Ed = self._ft(d_name).shift(*arrays)
        if Tn is None and Td is None:
            return None
        if Td is None:
            return Tn, En
        if Tn is None:
            Tn = np.zeros_like(Td)
            En = np.zeros_like(Td)
        if Tn.shape != Td.shape:
            shape = (Tn.shape[0], max(Tn.shape[1], Td.shape[1]), max(Tn.shape[2], Td.shape[2]))
            Tn, En = _pad(Tn, shape), _pad(En, shape)
            Td, Ed = _pad(Td, shape), _pad(Ed, shape)
        return combine(Tn, En, Td, Ed, self.k_lo, self.k_hi)

    @classmethod
    def for_objective(cls, obj, kappa: Kappa, sign: int = 1) -> SignTarget:
        """Target for a ratio objective, with mirror charts attached."""
        target = cls(obj.parts, kappa, sign)
        for mirror in MIRRORS:
            target.charts[mirror] = cls(chart_parts(obj.num, obj.den, mirror), kappa, sign,
                                        sigma=chart_sigma(mirror), anchors=CHART_ANCHORS[mirror])
        return target

    def float_bounds(self, boxes):
        """Per box: (lo, hi, center_lo, center_hi, hi_without_error, lo_without_error)."""
        out = self._plain_bounds(boxes)
        if not self.charts:
            return out
        lo, hi, clo, chi, hi0, lo0 = (np.array(a, dtype=float) for a in out)
        arr = np.asarray(boxes, dtype=float)
        for mirror, sub in self.charts.items():
            mask = near_mirror(arr, mirror)
            if not mask.any():
                continue
            l2, h2, _, _, h02, l02 = sub._plain_bounds(chart_boxes(arr[mask], mirror))
            lo[mask] = np.maximum(lo[mask], l2)
            hi[mask] = np.minimum(hi[mask], h2)
            hi0[mask] = np.minimum(hi0[mask], h02)
            lo0[mask] = np.maximum(lo0[mask], l02)
        return lo, hi, clo, chi, hi0, lo0

    def _plain_bounds(self, boxes):
        arrays = _float_box_arrays(boxes)
        TE = self._shift_pair("num", "den", arrays)
        K = arrays[0].shape[0]
        if TE is None:
            z = np.zeros(K)
            lo = hi = clo = chi = z
            lo0 = hi0 = z
        else:
            T, E = TE
            lo, hi = range_bounds(T, E)
            clo, chi = center_bounds(T, E)
            lo0, hi0 = range_bounds(T, np.zeros_like(E))
        if not self.s_free:
            TE = self._shift_pair("num_s", "den_s", arrays)
            if TE is not None:
                T, E = TE
                qlo, qhi = range_bounds(T, E)
                cqlo, cqhi = center_bounds(T, E)
                Ts, Es = self._ft("sigma").shift(*arrays)
                slo, shi = range_bounds(Ts, Es)
                cslo, cshi = center_bounds(Ts, Es)
                Slo, Shi = _sqrt_bounds(slo, shi)
                cSlo, cShi = _sqrt_bounds(cslo, cshi)
                plo, phi = _mul_bounds(qlo, qhi, Slo, Shi)
                cplo, cphi = _mul_bounds(cqlo, cqhi, cSlo, cShi)
                lo, hi = _add_lo(lo, plo), _add_hi(hi, phi)
                clo, chi = _add_lo(clo, cplo), _add_hi(chi, cphi)
                lo0, hi0 = _add_lo(lo0, plo), _add_hi(hi0, phi)
        if self.sign < 0:
            lo, hi = -hi, -lo
            clo, chi = -chi, -clo
            lo0, hi0 = -hi0, -lo0
        return lo, hi, clo, chi, hi0, lo0

    # -- exact tier --------------------------------------------------------

    def _combined_poly(self) -> Optional[Bivariate]:
        if self._combined is None and self.s_free and self.kappa.exact is not None:
            num = self.parts.get("num", Bivariate({}))
            den = self.parts.get("den", Bivariate({}))
            self._combined = num - den.scale(self.kappa.exact)
        return self._combined

    def exact_bounds(self, box: Box, prec: int = 128) -> Tuple[IntervalScalar, IntervalScalar]:
        """(range enclosure, centre enclosure) of the signed target."""
        box = tuple(Fraction(x) for x in box)
        comb = self._combined_poly()
        if comb is not None:
            coeffs = exact_coefficients(comb, box, prec)
            rng = _interval_range(coeffs, prec)
            cen = coeffs.get((0, 0), IntervalScalar.exact(0, prec))
        else:
            kap = self.kappa.enclosure(prec)
            rng, cen = self._pair_range("num", "den", box, kap, prec)
            if not self.s_free:
                qr, qc = self._pair_range("num_s", "den_s", box, kap, prec)
                sig = exact_coefficients(self.sigma, box, prec)
                S = _interval_range(sig, prec).clip_below(0).sqrt()
                Sc = sig[(0, 0)].clip_below(0).sqrt()
                rng = rng + qr * S
                cen = cen + qc * Sc
        if self.sign < 0:
            rng, cen = -rng, -cen
        return rng, cen

    def _pair_range(self, n_name, d_name, box, kap, prec):
        vals: Dict[Tuple[int, int], IntervalScalar] = {}
        if n_name in self.parts:
            vals = dict(exact_coefficients(self.parts[n_name], box, prec))
        if d_name in self.parts:
            for key, t in exact_coefficients(self.parts[d_name], box, prec).items():
                prod = t * kap
                vals[key] = vals[key] - prod if key in vals else -prod
        zero = IntervalScalar.exact(0, prec)
        return _interval_range(vals, prec), vals.get((0, 0), zero)


_CHART_SIGMA: Dict[str, Bivariate] = {}


def chart_sigma(mirror: str) -> Bivariate:
    got = _CHART_SIGMA.get(mirror)
    if got is None:
        got = _CHART_SIGMA[mirror] = chart_polynomial(SIGMA, mirror)
    return got


def _pad(A: np.ndarray, shape) -> np.ndarray:
    out = np.zeros(shape)
    out[:, : A.shape[1], : A.shape[2]] = A
    return out


def _sqrt_bounds(lo, hi):
    lo = np.maximum(lo, 0.0)
    hi = np.maximum(hi, 0.0)
    return np.sqrt(lo) * (1 - 4 * U), np.sqrt(hi) * (1 + 4 * U)


def _mul_bounds(alo, ahi, blo, bhi):
    c = np.stack([alo * blo, alo * bhi, ahi * blo, ahi * bhi])
    lo = c.min(axis=0)
    hi = c.max(axis=0)
    return lo - np.abs(lo) * 4 * U - 1e-300, hi + np.abs(hi) * 4 * U + 1e-300


def _add_lo(a, b):
    s = a + b
    return s - np.abs(s) * 4 * U - 1e-300


def _add_hi(a, b):
    s = a + b
    return s + np.abs(s) * 4 * U + 1e-300
