from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import PreconditionError, RangeError

# Bitmask subsets
#
# A subset of [n] = {1..n} is an int; element i lives at bit i-1.

Mask = int


def mask_of(members: Iterable[int]) -> Mask:
    mask = 0
    for i in members:
        if i < 1:
            raise RangeError(f"subset members are counted from 1, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members_of(mask: Mask) -> Tuple[int, ...]:
    """ Sorted members of a bitmask subset. """
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> Mask:
    return (1 << n) - 1


def complement(mask: Mask, n: int) -> Mask:
    return full_mask(n) & ~mask


def size(mask: Mask) -> int:
    return bin(mask).count("1")


def min_element(mask: Mask) -> int:
    """ Smallest member, 0 for the empty set. """
    return (mask & -mask).bit_length()


def is_subset(a: Mask, b: Mask) -> bool:
    return a & ~b == 0


def submasks(mask: Mask) -> Iterator[Mask]:
    """ Every submask of mask, the empty set and mask itself included, in decreasing order. """
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def subset_key(mask: Mask) -> Tuple[int, Tuple[int, ...]]:
    """ Sort key: by size, then lexicographically by sorted members. """
    return size(mask), members_of(mask)


def format_subset(mask: Mask) -> str:
    return "{" + ",".join(str(i) for i in members_of(mask)) + "}"


# Partitions

@dataclass(frozen=True)
class Partition:
    """
    A set partition of a subset I of [n], stored as a tuple of disjoint
    nonempty part masks sorted by their minimum element.
    """
    n: int
    parts: Tuple[Mask, ...]

    def __post_init__(self):
        if self.n < 1:
            raise RangeError(f"n must be positive, got {self.n}")
        seen = 0
        previous_min = 0
        for part in self.parts:
            if part == 0:
                raise PreconditionError("a partition has no empty parts")
            if not is_subset(part, full_mask(self.n)):
                raise RangeError(f"part {format_subset(part)} is not a subset of [{self.n}]")
            if part & seen:
                raise PreconditionError("partition parts must be pairwise disjoint")
            if min_element(part) <= previous_min:
                raise PreconditionError("partition parts must be sorted by minimum element")
            seen |= part
            previous_min = min_element(part)

    @classmethod
    def of(cls, n: int, parts: Iterable[Iterable[int]]) -> 'Partition':
        """ Builds the canonical partition from lists of members. """
        return cls.from_masks(n, (mask_of(p) for p in parts))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[Mask]) -> 'Partition':
        return cls(n, tuple(sorted(masks, key=min_element)))

    @classmethod
    def singletons(cls, n: int, ground: Optional[Mask] = None) -> 'Partition':
        ground = full_mask(n) if ground is None else ground
        return cls(n, tuple(1 << (i - 1) for i in members_of(ground)))

    @property
    def ground(self) -> Mask:
        mask = 0
        for part in self.parts:
            mask |= part
        return mask

    @property
    def is_of_n(self) -> bool:
        """ True when the partition covers all of [n]. """
        return self.ground == full_mask(self.n)

    def __len__(self) -> int:
        return len(self.parts)

    def part_of(self, i: int) -> Mask:
        """ The part containing element i, or 0 if i is outside the ground set. """
        bit = 1 << (i - 1)
        for part in self.parts:
            if part & bit:
                return part
        return 0

    def as_lists(self) -> List[List[int]]:
        return [list(members_of(p)) for p in self.parts]

    def __str__(self) -> str:
        return "|".join(format_subset(p) for p in self.parts)


def enumerate_partitions(n: int, ground: Optional[Mask] = None, min_parts: int = 1) -> Iterator[Partition]:
    """
    All set partitions of ground (default [n]) with at least min_parts parts,
    in restricted-growth-string order.
    """
    ground = full_mask(n) if ground is None else ground
    if ground == 0:
        raise PreconditionError("cannot partition the empty set")
    elements = members_of(ground)
    count = len(elements)
    blocks: List[Mask] = []

    def place(index: int) -> Iterator[Partition]:
        if len(blocks) + (count - index) < min_parts:
            return
        if index == count:
            yield Partition(n, tuple(blocks))
            return
        bit = 1 << (elements[index] - 1)
        for b in range(len(blocks)):
            blocks[b] |= bit
            yield from place(index + 1)
            blocks[b] &= ~bit
        blocks.append(bit)
        yield from place(index + 1)
        blocks.pop()

    yield from place(0)


def refines(q: Partition, p: Partition) -> bool:
    """ True iff every part of q lies inside some part of p. """
    if q.n != p.n or q.ground != p.ground:
        raise PreconditionError(f"refines needs a common ground set: {q} vs {p}")
    return all(any(is_subset(qp, pp) for pp in p.parts) for qp in q.parts)


def refinements(p: Partition) -> Iterator[Partition]:
    """ Every partition q with refines(q, p), p itself included. """
    per_part = [list(enumerate_partitions(p.n, part)) for part in p.parts]
    for choice in product(*per_part):
        yield Partition.from_masks(p.n, (m for sub in choice for m in sub.parts))
