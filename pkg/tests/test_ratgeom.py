from fractions import Fraction

import numpy as np
import pytest

from crepant.domain.errors import DimensionMismatchError
from crepant.domain.ratgeom import (
    ConeH, ConeV, cone_dim, cone_subset, cones_equal, contains_point, h_to_v, intersect, intersect_h,
    orthant, orthant_h, relint_intersects, v_to_h,
)

# A wedge in the plane and its two halves
WEDGE = ConeV(2, ((1, -1), (1, 1)))
LOWER = ConeV(2, ((1, -1), (1, 0)))
UPPER = ConeV(2, ((1, 0), (1, 1)))

def test_orthant_forms_agree():
    assert v_to_h(orthant(3)) == orthant_h(3)
    assert cones_equal(h_to_v(orthant_h(3)), orthant(3))

def test_v_to_h_of_a_wedge():
    h = v_to_h(WEDGE)
    assert set(h.inequalities) == {(1, 1), (1, -1)}
    assert h.contains((3, 2))
    assert not h.contains((1, 2))

def test_lineality_shows_up_as_pairs():
    half_plane = ConeV(2, ((1, 0), (0, 1), (0, -1)))
    assert set(v_to_h(half_plane).inequalities) == {(1, 0)}
    line = ConeH(2, ((1, -1), (-1, 1)))
    assert set(h_to_v(line).generators) == {(1, 1), (-1, -1)}

@pytest.mark.parametrize(
    "point, expected",
    [
        # Case 1: strictly inside
        ((2, 1), True),
        # Case 2: on a boundary ray
        ((1, 1), True),
        # Case 3: outside
        ((0, 1), False),
    ]
)
def test_contains_point(point, expected):
    assert contains_point(UPPER, point) is expected

def test_cone_dim():
    assert cone_dim(ConeV(3, ((1, 0, 0), (0, 1, 0), (1, 1, 0)))) == 2
    assert cone_dim(ConeV(3, ())) == 0

def test_relint_of_adjacent_halves():
    # they share the ray (1, 0) but no interior point
    assert not relint_intersects(LOWER, UPPER)
    assert relint_intersects(LOWER, WEDGE)
    assert relint_intersects(UPPER, UPPER)

def test_relint_of_the_zero_cone():
    zero = ConeV(2, ())
    assert relint_intersects(zero, ConeV(2, ((1, 0), (-1, 0))))
    assert not relint_intersects(zero, orthant(2))
    assert relint_intersects(zero, zero)

def test_subset_and_equality():
    assert cone_subset(UPPER, WEDGE)
    assert not cone_subset(WEDGE, UPPER)
    assert cones_equal(UPPER, ConeV(2, ((2, 2), (1, 0), (3, 1))))

def test_intersections():
    assert cones_equal(intersect(WEDGE, orthant(2)), UPPER)
    assert cones_equal(intersect_h(WEDGE, orthant_h(2)), UPPER)

def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        cone_subset(orthant(2), orthant(3))
    with pytest.raises(DimensionMismatchError):
        ConeV(2, ((1, 0, 0),))

def random_cone(rng, dim, count, pointed=False):
    """ Rational generators with large numerators; a positive first coordinate keeps the cone pointed. """
    gens = []
    while len(gens) < count:
        numerators = [int(v) for v in rng.integers(-10 ** 6, 10 ** 6, size=dim)]
        if pointed:
            numerators[0] = abs(numerators[0]) + 1
        if any(numerators):
            gens.append(tuple(Fraction(a, int(b)) for a, b in zip(numerators, rng.integers(1, 10 ** 3, size=dim))))
    return ConeV(dim, tuple(gens))

@pytest.mark.parametrize(
    "seed, dim, count",
    [
        # Case 1: planar cones, three generators
        (0, 2, 3),
        # Case 2: three-dimensional, fewer generators than dimensions
        (1, 3, 2),
        # Case 3: three-dimensional, enough generators to reach lines or the whole space
        (2, 3, 6),
        # Case 4: four-dimensional
        (3, 4, 6),
        # Case 5: six-dimensional
        (4, 6, 12),
    ]
)
def test_random_round_trip(seed, dim, count):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        cone = random_cone(rng, dim, count)
        assert cones_equal(h_to_v(v_to_h(cone)), cone)

@pytest.mark.parametrize(
    "seed, dim, count",
    [
        # Case 1: simplicial cones in three dimensions
        (5, 3, 3),
        # Case 2: four-dimensional, extra generators
        (6, 4, 7),
        # Case 3: five-dimensional
        (7, 5, 8),
    ]
)
def test_duality_is_an_involution(seed, dim, count):
    rng = np.random.default_rng(seed)
    for _ in range(10):
        cone = random_cone(rng, dim, count, pointed=True)
        if cone_dim(cone) < dim:
            continue
        dual = ConeV(dim, v_to_h(cone).inequalities)
        assert v_to_h(dual).inequalities == h_to_v(v_to_h(cone)).generators
