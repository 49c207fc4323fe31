import pytest

from crepant.domain.errors import PreconditionError, RangeError
from crepant.domain.subsets import (
    Partition, complement, enumerate_partitions, format_subset, mask_of, members_of, refinements,
    refines, submasks,
)

def test_mask_round_trip():
    """ Element i lives at bit i-1. """
    assert mask_of([1, 3]) == 0b101
    assert members_of(0b101) == (1, 3)
    assert complement(0b101, 4) == 0b1010
    assert format_subset(mask_of([2, 4])) == "{2,4}"

def test_mask_of_rejects_zero():
    with pytest.raises(RangeError):
        mask_of([0, 1])

def test_submasks_include_both_ends():
    subs = list(submasks(0b110))
    assert sorted(subs) == [0, 0b010, 0b100, 0b110]

@pytest.mark.parametrize(
    "n, min_parts, expected",
    [
        # Case 1: Bell numbers
        (4, 1, 15),
        (5, 1, 52),
        (6, 1, 203),
        # Case 2: at least three parts (free polygon cones): Bell(5) - 1 - S(5,2)
        (5, 3, 36),
        # Case 3: at least two parts
        (5, 2, 51),
    ]
)
def test_partition_counts(n, min_parts, expected):
    assert sum(1 for _ in enumerate_partitions(n, min_parts=min_parts)) == expected

def test_partitions_of_a_subset():
    parts = list(enumerate_partitions(5, ground=mask_of([2, 4, 5])))
    assert len(parts) == 5
    assert all(p.ground == mask_of([2, 4, 5]) for p in parts)
    assert not any(p.is_of_n for p in parts)

def test_partition_is_canonical(three_part_partition):
    same = Partition.of(5, [[5, 4], [3], [2, 1]])
    assert same == three_part_partition
    assert three_part_partition.as_lists() == [[1, 2], [3], [4, 5]]
    assert three_part_partition.part_of(4) == mask_of([4, 5])
    assert str(three_part_partition) == "{1,2}|{3}|{4,5}"

def test_partition_rejects_overlap():
    with pytest.raises(PreconditionError):
        Partition(4, (mask_of([1, 2]), mask_of([2, 3])))

def test_refinements(three_part_partition):
    found = list(refinements(three_part_partition))
    # {1,2} and {4,5} can each stay or split
    assert len(found) == 4
    assert all(refines(q, three_part_partition) for q in found)
    assert Partition.singletons(5) in found

def test_refines_needs_common_ground():
    with pytest.raises(PreconditionError):
        refines(Partition.of(4, [[1], [2]]), Partition.of(4, [[1, 2, 3]]))
