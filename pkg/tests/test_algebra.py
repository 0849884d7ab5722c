from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricenters.algebra import (
    IntervalScalar,
    Poly3,
    QSqrt3,
    S,
    SIGMA,
    SLinearPoly,
    eval_exact,
    eval_interval,
    isolate_real_roots,
    isolate_root,
    slin_mul,
)
from tricenters.algebra.poly import A, B, C
from tricenters.algebra.roots import count_roots, refine, sturm_sequence
from tricenters.centers import first_coordinate
from tricenters.errors import NoSuchRoot


def random_triangle(rng: random.Random):
    while True:
        a, b, c = (Fraction(rng.randint(1, 60), rng.randint(1, 12)) for _ in range(3))
        if a < b + c and b < a + c and c < a + b:
            return a, b, c


def random_poly(rng: random.Random, terms: int = 4, degree: int = 3) -> Poly3:
    out = {}
    for _ in range(terms):
        e = [rng.randint(0, degree) for _ in range(3)]
        out[tuple(e)] = QSqrt3(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-2, 2))
    return Poly3(out)


def random_slinear(rng: random.Random) -> SLinearPoly:
    return SLinearPoly(random_poly(rng), random_poly(rng, terms=2))


# -- Q(sqrt 3) -------------------------------------------------------------

def test_qsqrt3_field_ops():
    x = QSqrt3(1, 1)
    y = QSqrt3(2, -1)
    assert x * y == QSqrt3(-1, 1)
    assert (x / y) * y == x
    assert QSqrt3(0, 1) * QSqrt3(0, 1) == QSqrt3(3)
    assert QSqrt3(2, -1) > 0 and QSqrt3(1, -1) < 0


# -- polynomial ring laws --------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_poly3_ring_laws(seed):
    rng = random.Random(seed)
    x, y, z = random_poly(rng), random_poly(rng), random_poly(rng)
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    assert x - x == Poly3()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_slinear_ring_laws(seed):
    rng = random.Random(seed)
    x, y, z = random_slinear(rng), random_slinear(rng), random_slinear(rng)
    assert slin_mul(x + y, z) == slin_mul(x, z) + slin_mul(y, z)
    assert slin_mul(x, slin_mul(y, z)) == slin_mul(slin_mul(x, y), z)


def test_s_squared_reduces_to_sigma():
    sq = slin_mul(S, S)
    assert sq.s_coeff.is_zero()
    assert sq.base == SIGMA


def test_multiplicative_identity():
    x = random_slinear(random.Random(3))
    assert slin_mul(SLinearPoly(Poly3.constant(1)), x) == x


def test_fermat_and_isodynamic_product_is_s_free():
    # first coordinates of X15 and X16 differ only in the sign of S
    f15, f16 = first_coordinate(15), first_coordinate(16)
    prod = slin_mul(f15, f16)
    assert prod.s_coeff.is_zero()
    q = A * A - B * B - C * C
    expected = (A ** 4) * (q * q).scale(3) - (A ** 4) * SIGMA.scale(4)
    assert prod.base == expected.scale(prod.base.terms[(8, 0, 0)] / expected.terms[(8, 0, 0)])


def test_s_squared_matches_sigma_at_random_triangles():
    rng = random.Random(11)
    sq = slin_mul(S, S)
    for _ in range(100):
        sides = random_triangle(rng)
        s_val = eval_exact(S, sides)
        assert eval_exact(sq, sides) == s_val * s_val


# -- evaluation ------------------------------------------------------------

def test_eval_exact_at_345():
    v = eval_exact(first_coordinate(6), (3, 4, 5))
    assert v.is_rational() and v.u == QSqrt3(9)
    # S = twice the area = 12; the radicand sigma is 144, a rational square
    s = eval_exact(S, (3, 4, 5))
    assert s.is_rational() and s.u == QSqrt3(12)


def test_eval_exact_x13_equilateral():
    v = eval_exact(first_coordinate(13), (1, 1, 1))
    assert v.is_in_qsqrt3()
    # a^4 - 2(b^2-c^2)^2 + a^2(b^2+c^2+2 sqrt3 S) with S = sqrt3/2 gives 1 + 2 + 3
    assert v.u == QSqrt3(6)


def test_eval_interval_constant_and_s():
    seven = SLinearPoly(Poly3.constant(7))
    assert eval_interval(seven, ((0, 1), (0, 1), (0, 1))).contains(7)
    s = eval_interval(S, (3, 4, 5), 128)
    assert s.contains(12)
    assert s.width() <= 2.0 ** -50


def test_eval_interval_sound_on_point_boxes():
    rng = random.Random(5)
    for _ in range(1000):
        x = random_slinear(rng) if rng.random() < 0.5 else SLinearPoly(random_poly(rng))
        sides = random_triangle(rng)
        exact = eval_exact(x, sides)
        iv = eval_interval(x, sides, 128)
        assert iv.overlaps(exact.enclosure(300))


def test_eval_interval_monotone_in_box():
    f = SLinearPoly(A * B - C * C, A)
    parent = eval_interval(f, ((Fraction(3), Fraction(4)), (Fraction(3), Fraction(4)), (Fraction(2), Fraction(3))))
    child = eval_interval(f, ((Fraction(3), Fraction(7, 2)), (Fraction(7, 2), Fraction(4)), (Fraction(2), Fraction(5, 2))))
    slack = Fraction(1, 2 ** 100)
    assert parent.lower - slack <= child.lower and child.upper <= parent.upper + slack


# -- root isolation ---------------------------------------------------------

C1_POLY = [-100, 3698, -9547, 14429, -14689, 6137]


def test_isolate_second_largest():
    r = isolate_root(C1_POLY, "second-largest", Fraction(1, 10 ** 15))
    assert abs(float(r.midpoint()) - 0.9002270330) < 1e-9


def test_isolate_sqrt3():
    r = isolate_root([-3, 0, 1], "smallest-positive", Fraction(1, 10 ** 20))
    assert r.lo ** 2 <= 3 <= r.hi ** 2


def test_isolate_c10_polynomial():
    r = isolate_root([1, -2, 22, -72, 50], "smallest-positive", Fraction(1, 10 ** 15))
    assert abs(float(r.midpoint()) - 0.4556836127) < 1e-9


def test_isolate_root_missing_selector():
    with pytest.raises(NoSuchRoot):
        isolate_root([1, 0, 1], "largest")


@pytest.mark.parametrize("poly", [C1_POLY, [1, -2, 22, -72, 50], [-6, 11, -6, 1], [2, 0, -3, 0, 1]])
def test_roots_divide_polynomial(poly):
    roots = isolate_real_roots(poly)
    seq = sturm_sequence(poly)
    big = Fraction(10 ** 6)
    assert count_roots(seq, -big, big) == len(roots)
    with mpmath.workprec(200):
        all_roots = mpmath.polyroots(list(reversed(poly)), maxsteps=200, extraprec=400)
    real = sorted(float(r.real) for r in all_roots if abs(r.imag) < 1e-30)
    mids = sorted(float(refine(poly, r, Fraction(1, 10 ** 15)).midpoint()) for r in roots)
    assert len(real) == len(mids)
    for x, y in zip(real, mids):
        assert abs(x - y) < 1e-9


def test_interval_arithmetic_basics():
    x = IntervalScalar(Fraction(1), Fraction(2), 64)
    y = x * x - x
    assert y.contains(0) and y.contains(2)
    assert (x / x).contains(1)
