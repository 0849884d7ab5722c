from __future__ import annotations

from fractions import Fraction

import pytest

from tricenters.errors import NotATriangle
from tricenters.shapespace import (
    ROOT_BOX,
    TriangleShape,
    boundary_paths,
    canonicalize,
    corner_path,
    equilateral_path,
    flat_path,
    grid_sample,
    needle_path,
    random_sample,
    rational_sample,
)


def test_canonicalize_scales_and_sorts():
    s = canonicalize((3, 5, 4))
    assert s.sides == (1, Fraction(4, 5), Fraction(3, 5))


@pytest.mark.parametrize("sides", [(1, 2, 3), (1, 1, 2), (0, 1, 1), (-1, 2, 2)])
def test_canonicalize_rejects(sides):
    with pytest.raises(NotATriangle):
        canonicalize(sides)


def test_shape_validation():
    with pytest.raises(NotATriangle):
        TriangleShape(Fraction(1, 2), Fraction(1, 2))


def test_random_sample_is_deterministic():
    assert random_sample(50, 3) == random_sample(50, 3)
    assert random_sample(50, 3) != random_sample(50, 4)


def test_random_sample_pinned():
    s = random_sample(1, 0)[0]
    assert s.sides == (1, Fraction(248386579, 268435456), Fraction(521661745, 1073741824))


def test_samples_are_canonical():
    for s in random_sample(200, 1) + rational_sample(200, 1):
        assert 1 >= s.b >= s.c > 0 and s.b + s.c > 1


def test_rational_sample_deterministic():
    assert rational_sample(20, 5) == rational_sample(20, 5)


def test_grid_sample_covers_region():
    g = grid_sample(20)
    assert len(g) > 50
    assert len(set(g)) == len(g)


def test_root_box_contains_region():
    for s in random_sample(100, 2):
        assert ROOT_BOX.b_lo <= s.b <= ROOT_BOX.b_hi and ROOT_BOX.c_lo <= s.c <= ROOT_BOX.c_hi


def test_path_points():
    assert equilateral_path(1).at(Fraction(1, 10)).sides == (1, Fraction(9, 10), Fraction(9, 10))
    assert flat_path(Fraction(1, 2)).at(Fraction(1, 100)).sides == (1, Fraction(101, 200), Fraction(101, 200))
    assert needle_path(0).at(Fraction(1, 32)).sides == (1, 1, Fraction(1, 32))
    assert corner_path(0).at(Fraction(1, 32)).sides == (1, Fraction(17, 32), Fraction(1, 2))


def test_paths_approach_boundary():
    for path in boundary_paths():
        pts = list(path.points())
        assert pts
        for _, shape in pts:
            assert isinstance(shape, TriangleShape)


def test_path_parameter_checks():
    with pytest.raises(ValueError):
        flat_path(Fraction(3, 4))
    with pytest.raises(ValueError):
        needle_path(1)
