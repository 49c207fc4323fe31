import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import PreconditionError, RangeError, ResourceBoundError, SelfCheckError
from .subsets import (
    Mask, Partition, complement, enumerate_partitions, format_subset, full_mask,
    mask_of, members_of, refines, size, subset_key, submasks,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Complex", "SearchState", "is_biconnected", "is_maximal_biconnected", "is_full",
    "is_maximal_by_probing", "enumerate_max_biconnected", "count_max_biconnected",
    "split_search", "count_from", "enumerate_from", "count_biconnected", "hosten_morris",
    "max_biconnected_to_biconnected", "biconnected_to_max_biconnected",
    "non_full_complexes", "segre_complexes",
    # partition helpers live in subsets; re-exported for callers working with complexes
    "Partition", "enumerate_partitions", "refines",
]

MIN_N = 4
MAX_N = 9
MAX_EXACT_N = 7


# The Complex value

@dataclass(frozen=True)
class Complex:
    """
    A downward-closed family of subsets of [n], stored as one big int:
    bit number `mask` is set iff the subset `mask` is a face.

    The empty face (bit 0) is set for every complex that has any face at all,
    so the void complex (family 0) and the complex {empty set} (family 1) differ.
    The family must already be downward closed; use from_masks to close it.
    """
    n: int
    family: int

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[Mask]) -> 'Complex':
        """ Downward closure of the given faces. """
        family = 0
        top = full_mask(n)
        for mask in masks:
            if mask & ~top:
                raise RangeError(f"face {format_subset(mask)} is not a subset of [{n}]")
            if (family >> mask) & 1:
                continue
            for sub in submasks(mask):
                family |= 1 << sub
        return cls(n, family)

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Iterable[int]]) -> 'Complex':
        return cls.from_masks(n, (mask_of(f) for f in faces))

    @classmethod
    def void(cls, n: int) -> 'Complex':
        return cls(n, 0)

    def contains(self, mask: Mask) -> bool:
        return (self.family >> mask) & 1 == 1

    @property
    def faces(self) -> List[Mask]:
        """ Nonempty faces, by size and then lexicographically. """
        return sorted((m for m in range(1, 1 << self.n) if self.contains(m)), key=subset_key)

    @property
    def face_count(self) -> int:
        """ Number of nonempty faces. """
        return bin(self.family >> 1).count("1")

    @cached_property
    def maximal_faces(self) -> Tuple[Mask, ...]:
        top = full_mask(self.n)
        out = []
        for mask in range(1 << self.n):
            if not self.contains(mask):
                continue
            free = top & ~mask
            if all(not self.contains(mask | (1 << (i - 1))) for i in members_of(free)):
                out.append(mask)
        return tuple(sorted(out, key=subset_key))

    def is_downward_closed(self) -> bool:
        for mask in range(1 << self.n):
            if self.contains(mask) and any(
                not self.contains(mask & ~(1 << (i - 1))) for i in members_of(mask)
            ):
                return False
        return True

    def __str__(self) -> str:
        if self.family == 0:
            return f"void on [{self.n}]"
        return "<" + " ".join(format_subset(m) for m in self.maximal_faces) + f"> on [{self.n}]"


# Predicates

def is_biconnected(d: Complex) -> bool:
    """ No two maximal faces (a face with itself included) union to [n]. """
    top = full_mask(d.n)
    faces = d.maximal_faces
    return all(a | b != top for i, a in enumerate(faces) for b in faces[i:])


def is_maximal_biconnected(d: Complex) -> bool:
    """ Biconnected and containing exactly one of I, I^c for every nonempty proper I. """
    if not is_biconnected(d):
        return False
    top = full_mask(d.n)
    return all(d.contains(m) or d.contains(top & ~m) for m in range(1, top))


def is_full(d: Complex) -> bool:
    return all(d.contains(1 << i) for i in range(d.n))


def is_maximal_by_probing(d: Complex) -> bool:
    """ Maximality by brute force: adding any absent face must break biconnectedness. """
    if not is_biconnected(d):
        return False
    top = full_mask(d.n)
    for mask in range(1, top):
        if d.contains(mask):
            continue
        probe = Complex.from_masks(d.n, list(d.maximal_faces) + [mask])
        if is_biconnected(probe):
            return False
    return True


def _check_range(n: int, low: int, high: int) -> None:
    if not low <= n <= high:
        raise RangeError(f"n must be between {low} and {high}, got {n}")


# Search tables
#
# down[m] has a bit for every nonempty submask of m, up[m] one for every
# supermask of m inside [n]. Choosing a face S forces its subsets in and every
# superset of S^c out; rejecting S does the mirror image. Because both moves
# are closed under these implications, the search never reaches a dead end.

@dataclass(frozen=True)
class _Tables:
    n: int
    order: Tuple[Mask, ...]
    down: Tuple[int, ...]
    up: Tuple[int, ...]


def _down_up(n: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    top = full_mask(n)
    down = []
    up = []
    for mask in range(1 << n):
        bits = 0
        for sub in submasks(mask):
            if sub:
                bits |= 1 << sub
        down.append(bits)
        bits = 0
        for sub in submasks(top & ~mask):
            bits |= 1 << (mask | sub)
        up.append(bits)
    return tuple(down), tuple(up)


def _pair_key(mask: Mask) -> Tuple[int, Tuple[int, ...]]:
    members = members_of(mask)
    return members[0], members


@lru_cache(maxsize=None)
def _pair_tables(n: int) -> _Tables:
    """ One side I per complementary pair (the one holding 1), pairs by (min element, members). """
    top = full_mask(n)
    reps = {min(m, top & ~m, key=_pair_key) for m in range(1, top)}
    down, up = _down_up(n)
    return _Tables(n, tuple(sorted(reps, key=_pair_key)), down, up)


@lru_cache(maxsize=None)
def _subset_tables(m: int) -> _Tables:
    """ Every nonempty proper subset of [m], smallest first. """
    top = full_mask(m)
    down, up = _down_up(m)
    return _Tables(m, tuple(sorted(range(1, top), key=subset_key)), down, up)


@dataclass(frozen=True)
class SearchState:
    """ A node of the complementary-pair search: decided faces and the next pair to look at. """
    n: int
    inside: int
    outside: int
    position: int


def _branches(state: SearchState, tables: _Tables) -> Optional[Tuple[SearchState, SearchState]]:
    """ The two children of the next undecided pair, "representative in" first; None at a leaf. """
    decided = state.inside | state.outside
    position = state.position
    order = tables.order
    top = full_mask(tables.n)
    while position < len(order) and (decided >> order[position]) & 1:
        position += 1
    if position == len(order):
        return None
    rep = order[position]
    comp = top & ~rep
    take = SearchState(state.n, state.inside | tables.down[rep], state.outside | tables.up[comp], position + 1)
    drop = SearchState(state.n, state.inside | tables.down[comp], state.outside | tables.up[rep], position + 1)
    return take, drop


def _root(n: int) -> SearchState:
    return SearchState(n, 0, 0, 0)


def _singleton_bits(n: int) -> int:
    bits = 0
    for i in range(n):
        bits |= 1 << (1 << i)
    return bits


def split_search(n: int, depth: int) -> List[SearchState]:
    """
    Expands the search tree `depth` levels deep and returns the frontier in
    search order. Leaves met on the way are kept as they are. Counting or
    enumerating from each state in turn reproduces the serial result.
    """
    _check_range(n, MIN_N, MAX_N)
    tables = _pair_tables(n)
    frontier = [_root(n)]
    for _ in range(depth):
        expanded = []
        for state in frontier:
            children = _branches(state, tables)
            if children is None:
                expanded.append(state)
            else:
                expanded.extend(children)
        frontier = expanded
    return frontier


def _walk(state: SearchState, tables: _Tables) -> Iterator[int]:
    """ Yields the `inside` bitset of every leaf below state, in search order. """
    order = tables.order
    down, up = tables.down, tables.up
    top = full_mask(tables.n)
    stack = [(state.inside, state.outside, state.position)]
    while stack:
        inside, outside, position = stack.pop()
        decided = inside | outside
        while position < len(order) and (decided >> order[position]) & 1:
            position += 1
        if position == len(order):
            yield inside
            continue
        rep = order[position]
        comp = top & ~rep
        stack.append((inside | down[comp], outside | up[rep], position + 1))
        stack.append((inside | down[rep], outside | up[comp], position + 1))


def count_from(state: SearchState, full_only: bool = False) -> int:
    tables = _pair_tables(state.n)
    if not full_only:
        return sum(1 for _ in _walk(state, tables))
    singles = _singleton_bits(state.n)
    return sum(1 for inside in _walk(state, tables) if inside & singles == singles)


def enumerate_from(state: SearchState, full_only: bool = False) -> Iterator[Complex]:
    tables = _pair_tables(state.n)
    singles = _singleton_bits(state.n)
    for inside in _walk(state, tables):
        if full_only and inside & singles != singles:
            continue
        yield Complex(state.n, inside | 1)


def enumerate_max_biconnected(n: int, full_only: bool = False, limit: Optional[int] = None) -> Iterator[Complex]:
    """
    Every maximally-biconnected complex on [n] exactly once, in a fixed order:
    complementary pairs {I, I^c} by (min element, members) of I, the I side
    entering first.
    n = 8 and 9 are only streamed up to an explicit limit.
    """
    _check_range(n, MIN_N, MAX_N)
    if n > MAX_EXACT_N and limit is None:
        raise ResourceBoundError(f"enumeration for n={n} needs an explicit limit (exhaustive bound is n <= {MAX_EXACT_N})")
    logger.info("enumerating maximally-biconnected complexes on [%d] (full_only=%s)", n, full_only)
    emitted = 0
    for d in enumerate_from(_root(n), full_only):
        if limit is not None and emitted >= limit:
            return
        yield d
        emitted += 1


def count_max_biconnected(n: int, full_only: bool = False) -> int:
    _check_range(n, MIN_N, MAX_EXACT_N)
    return count_from(_root(n), full_only)


def count_biconnected(m: int) -> int:
    """
    Biconnected complexes on [m], void complex included: faces are decided one
    subset at a time, smallest first.
    """
    if m < 1:
        raise RangeError(f"m must be positive, got {m}")
    tables = _subset_tables(m)
    order = tables.order
    down, up = tables.down, tables.up
    top = full_mask(m)
    leaves = 0
    stack = [(0, 0, 0)]
    while stack:
        inside, outside, position = stack.pop()
        decided = inside | outside
        while position < len(order) and (decided >> order[position]) & 1:
            position += 1
        if position == len(order):
            leaves += 1
            continue
        face = order[position]
        stack.append((inside, outside | up[face], position + 1))
        stack.append((inside | down[face], outside | up[top & ~face], position + 1))
    return leaves + 1


def hosten_morris(n: int) -> int:
    """
    lambda(n), computed twice: by counting maximally-biconnected complexes on [n]
    and by counting biconnected complexes on [n-1]. Raises SelfCheckError if they differ.
    """
    _check_range(n, MIN_N, MAX_EXACT_N)
    by_pairs = count_max_biconnected(n)
    by_subsets = count_biconnected(n - 1)
    logger.info("lambda(%d): %d by pairs, %d by subsets of [%d]", n, by_pairs, by_subsets, n - 1)
    if by_pairs != by_subsets:
        raise SelfCheckError(f"lambda({n}) disagrees: {by_pairs} vs {by_subsets}")
    return by_pairs


# The bijection between [n] and [n-1]

def max_biconnected_to_biconnected(d: Complex) -> Complex:
    """ The biconnected complex {[n-1] \\ I : I subset of [n-1], I not a face of d} on [n-1]. """
    if not is_maximal_biconnected(d):
        raise PreconditionError(f"{d} is not maximally-biconnected")
    top = full_mask(d.n - 1)
    family = 0
    for mask in range(1, top + 1):
        if not d.contains(mask):
            family |= 1 << (top & ~mask)
    return Complex(d.n - 1, family)


def biconnected_to_max_biconnected(d: Complex, n: int) -> Complex:
    """
    Inverse of max_biconnected_to_biconnected: I inside [n-1] is a face iff
    [n-1] \\ I is not a face of d, and J + {n} is a face iff J is a face of d.
    """
    if d.n != n - 1:
        raise PreconditionError(f"expected a complex on [{n - 1}], got one on [{d.n}]")
    if not is_biconnected(d):
        raise PreconditionError(f"{d} is not biconnected")
    low = full_mask(n - 1)
    last = 1 << (n - 1)
    family = 1
    for mask in range(1, low + 1):
        if not d.contains(low & ~mask):
            family |= 1 << mask
    for mask in range(low):
        if d.contains(mask):
            family |= 1 << (mask | last)
    return Complex(n, family)


# Special families

def non_full_complexes(n: int) -> List[Complex]:
    """ The n complexes generated by {i}^c, i = 1..n. """
    return [Complex.from_masks(n, [complement(1 << i, n)]) for i in range(n)]


def segre_complexes(n: int) -> Iterator[Complex]:
    """
    For n = 2m: all subsets of size < m together with one m-set out of each
    complementary pair of m-sets, 2^(C(n,m)/2) complexes in all.
    """
    if n < MIN_N or n % 2:
        raise RangeError(f"segre complexes need an even n >= {MIN_N}, got {n}")
    m = n // 2
    top = full_mask(n)
    base = Complex.from_masks(n, [mask for mask in range(top) if size(mask) == m - 1]).family
    reps = sorted(
        (mask for mask in range(top) if size(mask) == m and mask & 1),
        key=subset_key,
    )
    for choice in range(1 << len(reps)):
        family = base
        for k, rep in enumerate(reps):
            face = top & ~rep if (choice >> k) & 1 else rep
            family |= 1 << face
        yield Complex(n, family)
