import pytest

from crepant.domain.complexes import non_full_complexes
from crepant.domain.errors import NotFreeError, PreconditionError, RangeError
from crepant.domain.hyper_cones import (
    CornerCone, HyperCone, ResolutionKind, ResolutionRecord, balanced_cone, census, census_summary,
    contains_corner, contains_F, corner_witness, free_orbit_data, generators_hyper, in_omega_X, in_omega_X_free,
    meet_C0, orbit_data_realizable, psi_bunch, psi_membership, record_for,
)
from crepant.domain.polygon_cones import PolygonCone, eta, generators
from crepant.domain.ratgeom import cone_dim, cone_subset, cones_equal, intersect_h, orthant, relint_intersects
from crepant.domain.subsets import Partition, mask_of

SINGLETONS = Partition.singletons(5)

@pytest.mark.parametrize(
    "parts, k, expected",
    [
        # Case 1: four parts meet K
        ([[1], [2], [3], [4], [5]], [1, 2, 3, 4], True),
        # Case 2: K meets one part in two elements
        ([[1, 2], [3], [4, 5]], [1, 2], True),
        # Case 3: two parts meet K in one element each
        ([[1, 2], [3], [4, 5]], [1, 3], False),
        # Case 4: three singletons, all met once
        ([[1], [2], [3], [4, 5]], [1, 2, 3], False),
        # Case 5: empty K
        ([[1, 2], [3, 4, 5]], [], True),
    ]
)
def test_orbit_cone_classification(parts, k, expected):
    p = Partition.of(5, parts)
    assert in_omega_X(p, mask_of(k)) is expected
    assert orbit_data_realizable(p, mask_of(k)) is expected

@pytest.mark.parametrize(
    "parts, k, expected",
    [
        # Case 1: three parts, empty K
        ([[1, 2], [3], [4, 5]], [], True),
        # Case 2: two parts need a nonempty K meeting no part once
        ([[1, 2], [3, 4, 5]], [], False),
        ([[1, 2], [3, 4, 5]], [3, 4], True),
        # Case 3: a partition of a proper subset is never free
        ([[1], [2], [3], [4]], [1, 2, 3, 4], False),
    ]
)
def test_free_orbit_data(parts, k, expected):
    assert in_omega_X_free(Partition.of(5, parts), mask_of(k)) is expected

def test_generators_hyper():
    plain = HyperCone(5, SINGLETONS, 0)
    assert generators_hyper(plain) == generators(PolygonCone(5, SINGLETONS))
    gens = generators_hyper(HyperCone(5, SINGLETONS, mask_of([1])))
    assert len(gens) == 11
    assert gens[-1] == (-1, 0, 0, 0, 0)

def test_free_hyper_cones_are_full_dimensional():
    for c in free_orbit_data(5, max_k=2):
        assert cone_dim(c.to_cone_v()) == 5

@pytest.mark.parametrize(
    "max_k",
    [
        # Case 1: #K up to two
        2,
        # Case 2: every K
        pytest.param(None, marks=pytest.mark.slow),
    ]
)
def test_free_hyper_cones_meet_the_open_orthant(max_k):
    f = orthant(5)
    for c in free_orbit_data(5, max_k):
        assert relint_intersects(c.to_cone_v(), f)

def test_hyper_cone_validation():
    with pytest.raises(RangeError):
        HyperCone(4, Partition.singletons(4), mask_of([5]))
    with pytest.raises(PreconditionError):
        HyperCone(5, Partition.singletons(4), 0)

def test_corner_containment(three_part_partition):
    c = HyperCone(5, three_part_partition, mask_of([1, 2]))
    # K leaves the part of 3 but not the part of 1
    assert contains_corner(c, 3)
    assert not contains_corner(c, 1)
    assert cone_subset(CornerCone(5, 3).to_cone_v(), c.to_cone_v())
    assert not cone_subset(CornerCone(5, 1).to_cone_v(), c.to_cone_v())

def test_F_containment(three_part_partition):
    inside_one_part = HyperCone(5, three_part_partition, mask_of([1, 2]))
    spread = HyperCone(5, SINGLETONS, mask_of([1, 2, 3, 4]))
    assert not contains_F(inside_one_part)
    assert contains_F(spread)
    assert cone_subset(orthant(5), spread.to_cone_v())
    assert not cone_subset(orthant(5), inside_one_part.to_cone_v())

def test_closed_forms_need_free_cones():
    c = HyperCone(5, Partition.of(5, [[1, 2], [3, 4, 5]]), 0)
    with pytest.raises(NotFreeError):
        contains_F(c)

@pytest.mark.parametrize(
    "k, expected_subset",
    [
        # Case 1: empty K gives omega_P itself
        ([], None),
        # Case 2: K inside the part {1,2} gives eta_{1,2}
        ([1, 2], [1, 2]),
        # Case 3: K inside the part {4,5}
        ([4, 5], [4, 5]),
    ]
)
def test_meet_C0(three_part_partition, k, expected_subset):
    c = HyperCone(5, three_part_partition, mask_of(k))
    meet = meet_C0(c)
    if expected_subset is None:
        assert meet == PolygonCone(5, three_part_partition)
    else:
        assert meet == eta(5, mask_of(expected_subset))
    assert cones_equal(meet.to_cone_v(), intersect_h(c.to_cone_v(), balanced_cone(5)))

def test_meet_C0_rejects_cones_containing_F():
    with pytest.raises(PreconditionError):
        meet_C0(HyperCone(5, SINGLETONS, mask_of([1, 2, 3, 4])))

def test_corner_cones():
    assert CornerCone(5, 0).to_cone_h() == balanced_cone(5)
    assert corner_witness(5, 2) == (1, 5, 1, 1, 1)
    assert CornerCone(5, 2).to_cone_h().contains(corner_witness(5, 2))
    with pytest.raises(RangeError):
        CornerCone(5, 6)

def test_free_orbit_data_with_empty_K():
    assert len(free_orbit_data(5, max_k=0)) == 36

def test_psi_with_empty_K_is_phi(small_full_complex):
    members = psi_bunch(small_full_complex, max_k=0)
    assert len(members) == 26
    assert all(psi_membership(small_full_complex, c) for c in members)

def test_psi_of_a_non_full_complex(three_part_partition):
    d = non_full_complexes(5)[2]  # generated by {3}^c
    c = HyperCone(5, three_part_partition, mask_of([1, 2]))
    assert psi_membership(d, c) == contains_corner(c, 3)

def test_records():
    d = non_full_complexes(5)[0]
    record = record_for(d)
    assert record.kind is ResolutionKind.PROJECTIVE
    assert record.witness == corner_witness(5, 1)
    with pytest.raises(PreconditionError):
        ResolutionRecord(d, ResolutionKind.PROJECTIVE)

def test_census_five():
    summary = census_summary(5)
    assert summary == {"n": 5, "total": 81, "projective": 81, "nonprojective": 0, "full": 76, "nonfull": 5}
    assert sum(1 for _ in census(5)) == 81

@pytest.mark.slow
def test_census_six():
    summary = census_summary(6)
    assert summary["total"] == 2646
    assert summary["projective"] == 1684
    assert summary["nonprojective"] == 962
    assert summary["nonfull"] == 6

@pytest.mark.extended
def test_census_seven():
    summary = census_summary(7)
    assert summary["total"] == 1422564
    assert summary["projective"] == 122921

def test_census_range():
    with pytest.raises(RangeError):
        census_summary(4)
