"""Taylor-form enclosures of bivariate polynomials over batches of boxes.

A box is centre (bm, cm) and radii (rb, rc).  With b = bm + rb u and
c = cm + rc v the polynomial becomes sum T[j,k] u^j v^k over |u|, |v| <= 1,
so its range lies in T[0,0] plus, per term, [min(0,T), max(0,T)] when j and
k are both even and [-|T|, |T|] otherwise.  The centre value is T[0,0].

Two ways of getting T are provided:

* ``FloatTaylor`` uses float64 matrix products for many boxes at once and
  returns a rigorous a-priori bound E on |T_computed - T_exact| (standard
  gamma_n bounds for sums of products, plus the coefficient conversion
  error).  Every box endpoint must be a dyadic rational so that centre and
  radius are exact floats.
* ``exact_taylor`` uses integer arithmetic, one box at a time.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import List, Tuple

import numpy as np

from .objective import Bivariate

U = 2.0 ** -53
TINY = 1e-290  # absolute allowance for underflow in products of small radii


def gamma(n: int) -> float:
    return n * U / (1 - n * U)


def _binomials(d: int) -> np.ndarray:
    B = np.zeros((d + 1, d + 1))
    for j in range(d + 1):
        for m in range(j, d + 1):
            B[j, m] = comb(m, j)
    return B


# Degenerate corners of the search plane: the needle (0, 0), the flat
# isosceles shape (0, 1/2) and the equilateral shape (1, 1).  Objectives often
# vanish to high order there, so boxes nearby are expanded from the nearest
# corner instead of the origin to avoid cancellation.
ANCHORS = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(1, 2)), (Fraction(1), Fraction(1)))


class _Expansion:
    """Float Taylor shifts of one polynomial written around a fixed anchor."""

    def __init__(self, poly: Bivariate):
        self.poly = poly
        self.db, self.dc = poly.db, poly.dc
        self.mid, self.rad = poly.dense_float()
        self.abs_mid = np.abs(self.mid)
        self.Bb = _binomials(self.db)
        self.Bc = _binomials(self.dc)
        self.L = 2 * (self.db + self.dc) + 12
        self.g = 2.0 * gamma(self.L)

    @staticmethod
    def _shift_matrix(center: np.ndarray, radius: np.ndarray, d: int, B: np.ndarray) -> np.ndarray:
        K = center.shape[0]
        # powers by repeated multiplication (each step one rounding)
        cp = np.ones((K, d + 1))
        rp = np.ones((K, d + 1))
        for e in range(1, d + 1):
            cp[:, e] = cp[:, e - 1] * center
            rp[:, e] = rp[:, e - 1] * radius
        j = np.arange(d + 1)[:, None]
        m = np.arange(d + 1)[None, :]
        diff = np.clip(m - j, 0, d)
        M = B[None, :, :] * cp[:, diff] * rp[:, :, None]
        return M

    def shift(self, bm, rb, cm, rc) -> Tuple[np.ndarray, np.ndarray]:
        Mb = self._shift_matrix(bm, rb, self.db, self.Bb)
        Mc = self._shift_matrix(cm, rc, self.dc, self.Bc)
        McT = np.swapaxes(Mc, 1, 2)
        T = Mb @ self.mid @ McT
        weight = self.abs_mid * self.g + self.rad * 1.01
        E = (np.abs(Mb) @ weight @ np.abs(McT)) * 1.01 + TINY
        return T, E


class FloatTaylor:
    """Batched float64 Taylor shifts of one :class:`Bivariate`.

    Each box is expanded from the nearest anchor; anchors are dyadic, so the
    anchored centres are still exact floats.
    """

    def __init__(self, poly: Bivariate, anchors=ANCHORS):
        self.poly = poly
        self.db, self.dc = poly.db, poly.dc
        self.anchors = tuple(anchors)
        self._exp = {}

    def _expansion(self, i: int) -> _Expansion:
        e = self._exp.get(i)
        if e is None:
            x0, y0 = self.anchors[i]
            e = _Expansion(self.poly.translate(x0, y0) if (x0 or y0) else self.poly)
            self._exp[i] = e
        return e

    def shift(self, bm, rb, cm, rc) -> Tuple[np.ndarray, np.ndarray]:
        """(T, E) of shape (K, db+1, dc+1)."""
        bm, rb, cm, rc = (np.asarray(a, dtype=float) for a in (bm, rb, cm, rc))
        pts = np.array([[float(x), float(y)] for x, y in self.anchors])
        d2 = (bm[:, None] - pts[None, :, 0]) ** 2 + (cm[:, None] - pts[None, :, 1]) ** 2
        which = np.argmin(d2, axis=1)
        K = bm.shape[0]
        T = np.zeros((K, self.db + 1, self.dc + 1))
        E = np.zeros_like(T)
        for i in np.unique(which):
            idx = np.nonzero(which == i)[0]
            x0, y0 = pts[i]
            e = self._expansion(int(i))
            t, err = e.shift(bm[idx] - x0, rb[idx], cm[idx] - y0, rc[idx])
            T[idx, : t.shape[1], : t.shape[2]] = t
            E[idx, : t.shape[1], : t.shape[2]] = err
        return T, E


# -- range bounds ------------------------------------------------------------

def _even_mask(shape) -> np.ndarray:
    j = np.arange(shape[-2])[:, None]
    k = np.arange(shape[-1])[None, :]
    mask = ((j % 2) == 0) & ((k % 2) == 0)
    mask[0, 0] = False
    return mask


def _odd_mask(shape) -> np.ndarray:
    j = np.arange(shape[-2])[:, None]
    k = np.arange(shape[-1])[None, :]
    mask = ~(((j % 2) == 0) & ((k % 2) == 0))
    return mask


def range_bounds(T: np.ndarray, E: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Rigorous (lo, hi) of the Taylor form for every box in the batch."""
    even = _even_mask(T.shape)
    odd = _odd_mask(T.shape)
    absT = np.abs(T)
    pos = np.where(even, np.maximum(T, 0.0), 0.0).sum(axis=(1, 2))
    neg = np.where(even, np.minimum(T, 0.0), 0.0).sum(axis=(1, 2))
    sym = np.where(odd, absT, 0.0).sum(axis=(1, 2))
    err = E.sum(axis=(1, 2))
    n = T.shape[1] * T.shape[2] + 4
    slack = 2.0 * gamma(n) * (absT.sum(axis=(1, 2)) + err) + TINY
    t00 = T[:, 0, 0]
    hi = t00 + pos + sym + err + slack
    lo = t00 + neg - sym - err - slack
    return lo, hi


def center_bounds(T: np.ndarray, E: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Enclosure of the value at the box centre."""
    t00 = T[:, 0, 0]
    e = E[:, 0, 0] * (1 + 4 * U) + TINY
    return t00 - e, t00 + e


def combine(Tn, En, Td, Ed, k_lo: float, k_hi: float):
    """Taylor coefficients and error for num - k den with k in [k_lo, k_hi]."""
    km = 0.5 * (k_lo + k_hi)
    kr = (k_hi - km) * (1 + 4 * U) + abs(km) * U
    T = Tn - km * Td
    absTd = np.abs(Td)
    E = En + (abs(km) + kr) * Ed * (1 + 4 * U) + kr * absTd + 3 * U * (np.abs(Tn) + abs(km) * absTd) * 1.01
    return T, E


def upper_crossing(Tn, En, Td, Ed, k_lo: np.ndarray, k_hi: np.ndarray, iterations: int = 48) -> np.ndarray:
    """Per box, a k with hi(num - k den) <= 0, found by bisection in [k_lo, k_hi].

    ``k_hi`` must already satisfy the condition.  Returns the certified k.
    """
    even = _even_mask(Tn.shape)
    odd = _odd_mask(Tn.shape)
    lo = k_lo.copy()
    hi = k_hi.copy()
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        ok = _hi_nonpositive(Tn, En, Td, Ed, mid, even, odd)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
        if np.all(hi - lo <= 1e-15 * np.maximum(1.0, np.abs(hi))):
            break
    return hi


def lower_crossing(Tn, En, Td, Ed, k_lo: np.ndarray, k_hi: np.ndarray, iterations: int = 48) -> np.ndarray:
    """Per box, a k with lo(num - k den) >= 0; ``k_lo`` must already qualify."""
    even = _even_mask(Tn.shape)
    odd = _odd_mask(Tn.shape)
    lo = k_lo.copy()
    hi = k_hi.copy()
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        ok = _lo_nonnegative(Tn, En, Td, Ed, mid, even, odd)
        lo = np.where(ok, mid, lo)
        hi = np.where(ok, hi, mid)
        if np.all(hi - lo <= 1e-15 * np.maximum(1.0, np.abs(hi))):
            break
    return lo


def _combo(Tn, En, Td, Ed, k):
    k = k[:, None, None]
    T = Tn - k * Td
    E = En + np.abs(k) * Ed * (1 + 4 * U) + 3 * U * (np.abs(Tn) + np.abs(k) * np.abs(Td)) * 1.01
    return T, E


def _hi_nonpositive(Tn, En, Td, Ed, k, even, odd):
    T, E = _combo(Tn, En, Td, Ed, k)
    _, hi = range_bounds(T, E)
    return hi <= 0


def _lo_nonnegative(Tn, En, Td, Ed, k, even, odd):
    T, E = _combo(Tn, En, Td, Ed, k)
    lo, _ = range_bounds(T, E)
    return lo >= 0


# -- exact integer shift ------------------------------------------------------

def _shift_rows(rows: List[List[int]], d: int, X0: int, X1: int, D: int) -> List[List[int]]:
    """Rows are polynomials in one variable x = (X0 + X1 t) / D; return
    D^d * p(x) as coefficient lists in t (length d+1)."""
    Dpow = [1] * (d + 1)
    for e in range(1, d + 1):
        Dpow[e] = Dpow[e - 1] * D
    out = []
    for a in rows:
        q = [a[d]] + [0] * d
        deg = 0
        for m in range(d - 1, -1, -1):
            # q <- q * (X0 + X1 t) + a_m D^(d-m)
            new = [0] * (d + 1)
            for i in range(deg + 1):
                qi = q[i]
                if qi:
                    new[i] += X0 * qi
                    new[i + 1] += X1 * qi
            deg += 1
            new[0] += a[m] * Dpow[d - m]
            q = new
        out.append(q)
    return out


def exact_taylor(poly: Bivariate, b_lo: Fraction, b_hi: Fraction, c_lo: Fraction, c_hi: Fraction):
    """Exact Taylor coefficients as (P, Q, scale): T[j][k] = (P + Q sqrt3)[j][k] / scale."""
    L, P, Q = poly.integer_form()
    db, dc = poly.db, poly.dc
    bm, rb = (b_lo + b_hi) / 2, (b_hi - b_lo) / 2
    cm, rc = (c_lo + c_hi) / 2, (c_hi - c_lo) / 2
    D = 1
    for x in (bm, rb, cm, rc):
        D = D * x.denominator // _gcd(D, x.denominator)
    Bn, Rb, Cn, Rc = (int(x * D) for x in (bm, rb, cm, rc))
    scale = L * D ** (db + dc)
    results = []
    for M in (P, Q):
        if not any(any(r) for r in M):
            results.append(None)
            continue
        # shift in b: columns of M are polynomials in b
        cols = [[M[m][n] for m in range(db + 1)] for n in range(dc + 1)]
        sb = _shift_rows(cols, db, Bn, Rb, D)  # sb[n][j]
        rows = [[sb[n][j] for n in range(dc + 1)] for j in range(db + 1)]
        sc = _shift_rows(rows, dc, Cn, Rc, D)  # sc[j][k]
        results.append(sc)
    zero = [[0] * (dc + 1) for _ in range(db + 1)]
    Pt = results[0] if results[0] is not None else zero
    Qt = results[1] if results[1] is not None else zero
    return Pt, Qt, scale


def _gcd(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def exact_taylor_float(poly: Bivariate, box) -> Tuple[np.ndarray, np.ndarray]:
    """Exact Taylor coefficients rounded to float, with their rounding error."""
    P, Q, scale = exact_taylor(poly, *box)
    db, dc = poly.db, poly.dc
    T = np.zeros((db + 1, dc + 1))
    E = np.zeros_like(T)
    has_q = any(any(r) for r in Q)
    for j in range(db + 1):
        for k in range(dc + 1):
            if has_q and Q[j][k]:
                from ..algebra.interval import IntervalScalar
                from ..algebra.qfield import QSqrt3
                iv = IntervalScalar.exact(QSqrt3(Fraction(P[j][k], scale), Fraction(Q[j][k], scale)), 96)
                lo, hi = float(iv.lower), float(iv.upper)
                T[j, k] = 0.5 * (lo + hi)
                E[j, k] = (hi - lo) + abs(T[j, k]) * 2 * U + TINY
            elif P[j][k]:
                v = Fraction(P[j][k], scale)
                T[j, k] = float(v)
                E[j, k] = abs(T[j, k]) * 2 * U + TINY
    return T, E
