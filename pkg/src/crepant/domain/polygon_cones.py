from dataclasses import dataclass
from typing import Iterator, List, Sequence

from .errors import NotFreeError, PreconditionError
from .ratgeom import ConeV, cone_subset
from .subsets import (
    Mask, Partition, enumerate_partitions, full_mask, members_of, refines, submasks,
)
from .values import IntVector, Rational, dot, unit


# Polygon orbit cones
#
# omega_P = Cone(e_i + e_j : i < j in the ground set, {i, j} inside no part of P).

@dataclass(frozen=True)
class PolygonCone:
    n: int
    partition: Partition

    def __post_init__(self):
        if self.partition.n != self.n:
            raise PreconditionError(f"partition lives on [{self.partition.n}], cone on [{self.n}]")

    @classmethod
    def of(cls, partition: Partition) -> 'PolygonCone':
        return cls(partition.n, partition)

    @property
    def is_free(self) -> bool:
        return in_omega_Y_free(self.partition)

    def to_cone_v(self) -> ConeV:
        return ConeV(self.n, tuple(generators(self)))

    def __str__(self) -> str:
        return f"omega[{self.partition}]"


def generators(c: PolygonCone) -> List[IntVector]:
    """ e_i + e_j for i < j in the ground set not sharing a part, in (i, j) order. """
    p = c.partition
    ground = members_of(p.ground)
    out = []
    for a, i in enumerate(ground):
        part = p.part_of(i)
        for j in ground[a + 1:]:
            if not (part >> (j - 1)) & 1:
                out.append(tuple(x + y for x, y in zip(unit(c.n, i), unit(c.n, j))))
    return out


def in_omega_Y(p: Partition) -> bool:
    """ Every partition of every subset of [n] names an orbit cone. """
    return p.ground & ~full_mask(p.n) == 0


def in_omega_Y_free(p: Partition) -> bool:
    return p.is_of_n and len(p) >= 3


def _require_free(*cones: PolygonCone) -> None:
    for c in cones:
        if not c.is_free:
            raise NotFreeError(f"{c} is not free; use the ratgeom oracle")


def v_functional(n: int, subset: Mask) -> IntVector:
    """ v_I = sum of f_j for j outside I minus sum of f_i for i in I. """
    return tuple(-1 if (subset >> i) & 1 else 1 for i in range(n))


def dual_generators(c: PolygonCone) -> List[IntVector]:
    """ v_I for each part I, then f_1..f_n. Their cone is the dual of a free omega_P. """
    _require_free(c)
    return [v_functional(c.n, part) for part in c.partition.parts] + [unit(c.n, i) for i in range(1, c.n + 1)]


def contains_theta(c: PolygonCone, theta: Sequence[Rational]) -> bool:
    """ Closed-form membership for a free cone: theta >= 0 and v_I(theta) >= 0 on every part. """
    return all(dot(g, theta) >= 0 for g in dual_generators(c))


def subset_free(p: PolygonCone, q: PolygonCone) -> bool:
    """ omega_P inside omega_Q iff Q refines P. """
    _require_free(p, q)
    return refines(q.partition, p.partition)


def subset(p: PolygonCone, q: PolygonCone) -> bool:
    """ Containment with the closed form where it is proven and the oracle elsewhere. """
    if p.is_free and q.is_free:
        return subset_free(p, q)
    return cone_subset(p.to_cone_v(), q.to_cone_v())


def relint_disjoint_free(p: PolygonCone, q: PolygonCone) -> bool:
    """ Interiors are disjoint iff some part of P and some part of Q cover [n]. """
    _require_free(p, q)
    top = full_mask(p.n)
    return any(a | b == top for a in p.partition.parts for b in q.partition.parts)


def eta(n: int, subset_mask: Mask) -> PolygonCone:
    """ eta_I = omega of {I} plus the singletons outside I; the empty I gives all singletons. """
    if subset_mask & ~full_mask(n):
        raise PreconditionError(f"subset does not lie in [{n}]")
    rest = full_mask(n) & ~subset_mask
    parts = [1 << (i - 1) for i in members_of(rest)]
    if subset_mask:
        parts.append(subset_mask)
    return PolygonCone(n, Partition.from_masks(n, parts))


def free_partitions(n: int) -> List[Partition]:
    """ Partitions of [n] with at least three parts, in canonical order. """
    return list(enumerate_partitions(n, min_parts=3))


def all_partitions(n: int) -> Iterator[Partition]:
    """ Partitions of every subset of [n], the empty one included. """
    yield Partition(n, ())
    for ground in sorted(submasks(full_mask(n))):
        if ground:
            yield from enumerate_partitions(n, ground)
