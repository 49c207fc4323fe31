import pytest

from crepant.adapters.executors import SerialExecutor
from crepant.domain.arrangements import Arrangement, build_A
from crepant.domain.errors import ResourceBoundError
from crepant.domain.region_counting import (
    CharpolyRegionCounter, EnumerateRegionCounter, check_bounds, count_points, counter_for,
    cutting_normals, enumerate_regions, essential_normals,
)
from crepant.domain.values import dot

# Four planes through the origin of R^3 in general position
GENERIC = Arrangement.of(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])

@pytest.mark.parametrize(
    "normals, q, expected",
    [
        # Case 1: (q-1)^2
        ([(1, 0), (0, 1)], 5, 16),
        # Case 2: chi(t) = t^3 - 4t^2 + 6t - 3 at t = 5
        ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 5, 52),
        # Case 3: x = y, y = z, x = z over F_7
        ([(1, -1, 0), (0, 1, -1), (1, 0, -1)], 7, 7 * 6 * 5),
    ]
)
def test_count_points(normals, q, expected):
    assert count_points(normals, q) == expected

def test_generic_planes():
    result = CharpolyRegionCounter().count(GENERIC)
    assert result.regions == 14
    assert result.polynomial == (1, -4, 6, -3)
    assert EnumerateRegionCounter().count(GENERIC).regions == 14

def test_charpoly_through_an_executor():
    counter = CharpolyRegionCounter(SerialExecutor())
    assert counter.count(GENERIC) == CharpolyRegionCounter().count(GENERIC)

def test_primes_lie_beyond_every_minor():
    result = CharpolyRegionCounter().count(GENERIC)
    # the 0/1 minors here are at most 2 in absolute value
    assert min(result.primes) > 2
    assert len(result.primes) >= 4

def test_essential_normals_keep_the_pivot_columns():
    assert essential_normals([(1, 1, 0), (2, 2, 1)]) == [(1, 0), (2, 1)]
    assert essential_normals([]) == []

def test_enumerated_regions_carry_witnesses():
    chambers = enumerate_regions([(1, 0), (0, 1)], 2)
    assert [c.signs for c in chambers] == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    for c in chambers:
        assert all(s * dot(h, c.witness) > 0 for s, h in zip(c.signs, [(1, 0), (0, 1)]))

def test_regions_inside_a_cone():
    # the quadrant x > 0, y > 0 is cut once by x = y
    chambers = enumerate_regions([(1, 0), (0, 1), (1, -1)], 2, cone_rows=[(1, 0), (0, 1)])
    assert len(chambers) == 2
    assert cutting_normals([(1, 0), (0, 1), (1, -1)], [(2, 0), (0, 1)]) == [(1, -1)]

def test_empty_cone_has_no_regions():
    assert enumerate_regions([(1, 1)], 2, cone_rows=[(1, 0), (-1, 0)]) == []

def test_bounds():
    check_bounds(8, 64)
    with pytest.raises(ResourceBoundError, match="dim"):
        check_bounds(9, 1)
    with pytest.raises(ResourceBoundError, match="64"):
        check_bounds(8, 65)
    with pytest.raises(ResourceBoundError):
        EnumerateRegionCounter().count(build_A(7))

def test_unknown_method():
    assert counter_for("enumerate").name == "enumerate"
    assert counter_for("charpoly").name == "charpoly"
    with pytest.raises(ValueError):
        counter_for("guess")
