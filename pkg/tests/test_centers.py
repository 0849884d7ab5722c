from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest

from tricenters.centers import (
    INDICES,
    PointTable,
    cartesian_oracle,
    catalog,
    distance_squared,
    midpoint_check,
    normalized_barycentric,
    oracle_distance,
)
from tricenters.errors import DegenerateCenter, NotATriangle
from tricenters.shapespace import rational_sample


def as_float(x) -> float:
    return float(x)


def test_catalog_has_twenty_centers():
    cat = catalog()
    assert sorted(cat) == list(INDICES)


def test_incenter_345():
    p = normalized_barycentric(1, (3, 4, 5))
    assert [as_float(x) for x in p] == pytest.approx([0.25, 1 / 3, 5 / 12])


def test_centroid_is_uniform():
    p = normalized_barycentric(2, (Fraction(7, 3), 3, 4))
    assert all(as_float(x) == pytest.approx(1 / 3) for x in p)


@pytest.mark.parametrize("k", INDICES)
def test_normalized_coordinates_sum_to_one(k):
    try:
        p = normalized_barycentric(k, (Fraction(13, 10), Fraction(11, 10), 1))
    except DegenerateCenter:
        pytest.skip("center undefined at this triangle")
    assert as_float(p.total()) == pytest.approx(1.0, abs=1e-30)


def test_cartesian_examples_345():
    x, y = cartesian_oracle(1, (3, 4, 5))
    assert (float(x), float(y)) == pytest.approx((1.0, 1.0))
    x, y = cartesian_oracle(3, (3, 4, 5))
    assert (float(x), float(y)) == pytest.approx((1.5, 2.0))


def test_euler_line_known_distances():
    sides = (3, 4, 5)
    # Euler: OH^2 = 9R^2 - (a^2+b^2+c^2); R = 5/2 for 3-4-5
    assert as_float(distance_squared(3, 4, sides)) == pytest.approx(9 * 6.25 - 50)
    # OI^2 = R(R - 2r), r = 1
    assert as_float(distance_squared(1, 3, sides)) == pytest.approx(2.5 * 0.5)


def test_distance_matches_oracle():
    rng = random.Random(4)
    for shape in rational_sample(5, seed=3):
        i, j = rng.sample(INDICES, 2)
        try:
            d2 = distance_squared(i, j, shape.sides)
        except DegenerateCenter:
            continue
        with mpmath.workprec(192):
            ref = oracle_distance(i, j, shape.sides)
            assert abs(mpmath.sqrt(mpmath.mpf(d2.enclosure(192).mid_mpf())) - ref) < mpmath.mpf(10) ** -40


def test_interval_sides_enclose_exact():
    sides = (Fraction(6, 5), 1, Fraction(9, 10))
    exact = distance_squared(6, 13, sides)
    iv = distance_squared(6, 13, tuple((s, s) for s in sides), 128)
    assert iv.overlaps(exact.enclosure(256))


def test_scale_invariance_of_ratios():
    sides = (Fraction(6, 5), 1, Fraction(9, 10))
    big = tuple(3 * s for s in sides)
    r1 = as_float(distance_squared(1, 3, sides)) / as_float(distance_squared(2, 3, sides))
    r2 = as_float(distance_squared(1, 3, big)) / as_float(distance_squared(2, 3, big))
    assert r1 == pytest.approx(r2, rel=1e-14)


def test_relabel_invariance_of_distances():
    sides = (Fraction(6, 5), 1, Fraction(9, 10))
    rotated = (sides[1], sides[2], sides[0])
    for i, j in [(1, 4), (3, 13), (6, 11)]:
        assert distance_squared(i, j, sides) == distance_squared(i, j, rotated)


def test_euler_midpoint():
    # the nine-point center bisects the circumcenter and the orthocenter
    assert midpoint_check(3, 5, 4, (Fraction(7, 5), 1, Fraction(4, 5)))
    assert not midpoint_check(3, 2, 4, (Fraction(7, 5), 1, Fraction(4, 5)))


def test_point_table_exact_equalities():
    table = PointTable((Fraction(7, 5), 1, Fraction(4, 5)))
    assert table.d2(3, 5) == table.d2(4, 5)
    assert table.d2(1, 10) == table.d2(8, 10)


def test_not_a_triangle():
    with pytest.raises(NotATriangle):
        distance_squared(1, 2, (1, 2, 5))


def test_degenerate_center_at_equilateral():
    with pytest.raises(DegenerateCenter):
        normalized_barycentric(11, (1, 1, 1))
