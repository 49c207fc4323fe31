import numpy as np
import pytest

from crepant.domain.errors import NotFreeError, PreconditionError
from crepant.domain.polygon_cones import (
    PolygonCone, all_partitions, contains_theta, dual_generators, eta, free_partitions, generators,
    in_omega_Y, in_omega_Y_free, relint_disjoint_free, subset, subset_free, v_functional,
)
from crepant.domain.ratgeom import ConeV, cone_subset, cones_equal, relint_intersects, v_to_h
from crepant.domain.subsets import Partition, mask_of

def test_generators_skip_pairs_inside_a_part(three_part_partition):
    gens = generators(PolygonCone.of(three_part_partition))
    # 10 pairs of [5] minus {1,2} and {4,5}
    assert len(gens) == 8
    assert (1, 0, 1, 0, 0) in gens
    assert (1, 1, 0, 0, 0) not in gens

def test_freeness(three_part_partition):
    assert in_omega_Y_free(three_part_partition)
    assert not in_omega_Y_free(Partition.of(5, [[1, 2, 3], [4, 5]]))
    assert not in_omega_Y_free(Partition.of(5, [[1], [2], [3]]))
    assert in_omega_Y(Partition.of(5, [[1], [2], [3]]))

def test_v_functional():
    assert v_functional(4, mask_of([1, 3])) == (-1, 1, -1, 1)
    assert v_functional(3, 0) == (1, 1, 1)

def test_dual_generators_need_a_free_cone():
    with pytest.raises(NotFreeError):
        dual_generators(PolygonCone.of(Partition.of(4, [[1, 2], [3, 4]])))

@pytest.mark.parametrize(
    "theta, expected",
    [
        # Case 1: balanced point, every part has v_I > 0
        ((1, 1, 1, 1, 1), True),
        # Case 2: on the wall v_{1,2} = 0
        ((2, 1, 1, 1, 1), True),
        # Case 3: heavy part {4,5}: v = 3 - 10 < 0
        ((1, 1, 1, 5, 5), False),
        # Case 4: negative coordinate
        ((1, 1, -1, 1, 1), False),
    ]
)
def test_contains_theta(three_part_partition, theta, expected):
    assert contains_theta(PolygonCone.of(three_part_partition), theta) is expected

def test_refinement_closed_form_matches_oracle_on_examples(three_part_partition):
    coarse = PolygonCone.of(three_part_partition)
    fine = PolygonCone.of(Partition.singletons(5))
    assert subset_free(coarse, fine)
    assert not subset_free(fine, coarse)
    assert cone_subset(coarse.to_cone_v(), fine.to_cone_v())
    assert not cone_subset(fine.to_cone_v(), coarse.to_cone_v())

def test_subset_falls_back_to_the_oracle():
    two_parts = PolygonCone.of(Partition.of(4, [[1, 2], [3, 4]]))
    singletons = PolygonCone.of(Partition.singletons(4))
    assert subset(two_parts, singletons)
    assert not subset(singletons, two_parts)

def test_disjoint_interiors():
    p = PolygonCone.of(Partition.of(5, [[1, 2, 3], [4], [5]]))
    q = PolygonCone.of(Partition.of(5, [[1], [2], [3, 4, 5]]))
    r = PolygonCone.of(Partition.of(5, [[1, 4], [2, 5], [3]]))
    # {1,2,3} and {3,4,5} cover [5]
    assert relint_disjoint_free(p, q)
    assert not relint_intersects(p.to_cone_v(), q.to_cone_v())
    assert not relint_disjoint_free(p, r)
    assert relint_intersects(p.to_cone_v(), r.to_cone_v())

def test_eta():
    cone = eta(5, mask_of([2, 3]))
    assert cone.partition == Partition.of(5, [[1], [2, 3], [4], [5]])
    assert eta(4, 0).partition == Partition.singletons(4)
    with pytest.raises(PreconditionError):
        eta(3, mask_of([4]))

def test_partition_listings():
    assert len(free_partitions(5)) == 36
    # partitions of every subset of [3]: Bell(4)
    assert sum(1 for _ in all_partitions(3)) == 15

@pytest.mark.parametrize(
    "n",
    [
        # Case 1: the 36 free partitions of [5]
        5,
        # Case 2: the free partitions of [6]
        pytest.param(6, marks=pytest.mark.slow),
    ]
)
def test_dual_generators_match_the_facets(n):
    for p in free_partitions(n):
        cone = PolygonCone.of(p)
        facets = ConeV(n, v_to_h(cone.to_cone_v()).inequalities)
        assert cones_equal(ConeV.of(n, dual_generators(cone)), facets)

def test_distinct_partitions_give_distinct_cones():
    forms = {}
    for p in all_partitions(5):
        forms.setdefault(v_to_h(PolygonCone.of(p).to_cone_v()).inequalities, []).append(p)
    # one part (or none) gives the zero cone; everything else is told apart
    zero = [p for p in all_partitions(5) if len(p) <= 1]
    assert len(zero) == 32
    assert len(forms) == 203 - len(zero) + 1
    assert sorted(len(ps) for ps in forms.values())[-1] == len(zero)

@pytest.mark.parametrize(
    "n, pairs, seed",
    [
        # Case 1: a quick sample on [6]
        (6, 60, 0),
        # Case 2: the full sample on [6]
        pytest.param(6, 500, 1, marks=pytest.mark.slow),
        # Case 3: the full sample on [7]
        pytest.param(7, 500, 2, marks=pytest.mark.slow),
    ]
)
def test_closed_forms_match_the_oracle_on_random_pairs(n, pairs, seed):
    cones = [PolygonCone.of(p) for p in free_partitions(n)]
    rng = np.random.default_rng(seed)
    for a, b in rng.integers(0, len(cones), size=(pairs, 2)):
        p, q = cones[int(a)], cones[int(b)]
        assert subset_free(p, q) == cone_subset(p.to_cone_v(), q.to_cone_v())
        assert relint_disjoint_free(p, q) == (not relint_intersects(p.to_cone_v(), q.to_cone_v()))
