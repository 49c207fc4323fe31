import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import sympy

from .errors import DimensionMismatchError, RangeError
from .lp import find_nonnegative
from .values import IntVector, RatVector, dot, is_zero, primitive, unit

logger = logging.getLogger(__name__)


# Cone representations

@dataclass(frozen=True)
class ConeV:
    """ Cone(generators): all nonnegative combinations. No zero generators. """
    dim: int
    generators: Tuple[RatVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        _check_vectors(self.dim, self.generators, "generator")

    @classmethod
    def of(cls, dim: int, generators: Iterable[Sequence]) -> 'ConeV':
        """ Canonical form: zero vectors dropped, primitive rays, deduplicated and sorted. """
        return cls(dim, _canonical_rays(generators))

    @property
    def is_zero(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class ConeH:
    """ {x : L.x >= 0 for every L in inequalities}. No zero normals. """
    dim: int
    inequalities: Tuple[RatVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(tuple(r) for r in self.inequalities))
        _check_vectors(self.dim, self.inequalities, "inequality")

    @classmethod
    def of(cls, dim: int, inequalities: Iterable[Sequence]) -> 'ConeH':
        return cls(dim, _canonical_rays(inequalities))

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionMismatchError(f"point of length {len(x)} for a cone in dimension {self.dim}")
        return all(dot(row, x) >= 0 for row in self.inequalities)


def _check_vectors(dim: int, vectors: Tuple[RatVector, ...], what: str) -> None:
    if dim < 1:
        raise RangeError(f"ambient dimension must be positive, got {dim}")
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatchError(f"{what} {v} does not have length {dim}")
        if is_zero(v):
            raise DimensionMismatchError(f"zero {what} in a cone description")


def _canonical_rays(vectors: Iterable[Sequence]) -> Tuple[IntVector, ...]:
    return tuple(sorted({primitive(v) for v in vectors if not is_zero(v)}))


# Double description
#
# Computes {x : a.x >= 0 for every row a} as cone(rays) + span(lineality).
# Rows are inserted one at a time. While the current lineality space is not
# annihilated by the new row, one lineality vector turns into a ray; otherwise
# rays are split by sign and adjacent +/- pairs are combined. Adjacency is the
# combinatorial test on zero sets, which is exact for a minimal description.

_Ray = Tuple[IntVector, FrozenSet[int]]


def _reduce(v: Sequence[int]) -> IntVector:
    return primitive(v)


def _double_description(rows: Sequence[IntVector], dim: int) -> Tuple[List[IntVector], List[IntVector]]:
    lineality: List[IntVector] = [unit(dim, i + 1) for i in range(dim)]
    rays: List[_Ray] = []
    for k, a in enumerate(rows):
        moving = next((b for b in lineality if dot(a, b) != 0), None)
        if moving is not None:
            if dot(a, moving) < 0:
                moving = tuple(-v for v in moving)
            s = dot(a, moving)
            lineality = [
                _reduce([s * x - dot(a, b) * y for x, y in zip(b, moving)])
                for b in lineality
                if b != moving and b != tuple(-v for v in moving)
            ]
            lineality = [b for b in lineality if not is_zero(b)]
            rays = [
                (_reduce([s * x - dot(a, r) * y for x, y in zip(r, moving)]), z | {k})
                for r, z in rays
            ]
            rays.append((moving, frozenset(range(k))))
            continue

        positive, zero, negative = [], [], []
        for r, z in rays:
            value = dot(a, r)
            if value > 0:
                positive.append((r, z))
            elif value < 0:
                negative.append((r, z))
            else:
                zero.append((r, z | {k}))
        combined: List[_Ray] = []
        for p, zp in positive:
            for q, zq in negative:
                common = zp & zq
                if any(common <= zr for r, zr in rays if r is not p and r is not q):
                    continue
                ap, aq = dot(a, p), dot(a, q)
                new = _reduce([ap * y - aq * x for x, y in zip(p, q)])
                combined.append((new, common | {k}))
        rays = positive + zero + combined
        logger.debug("dd row %d: %d rays, lineality %d", k, len(rays), len(lineality))
    return [r for r, _ in rays], lineality


def _canonical_output(rays: List[IntVector], lineality: List[IntVector], dim: int) -> Tuple[IntVector, ...]:
    if not lineality:
        return tuple(sorted(set(rays)))
    basis = sympy.Matrix(lineality).rref()[0]
    lin_rows = [primitive([_to_fraction(e) for e in basis.row(i)]) for i in range(basis.rows) if any(basis.row(i))]
    l_matrix = sympy.Matrix(lin_rows)
    projector = sympy.eye(dim) - l_matrix.T * (l_matrix * l_matrix.T).inv() * l_matrix
    projected = set()
    for r in rays:
        p = projector * sympy.Matrix(r)
        vec = [_to_fraction(e) for e in p]
        if not is_zero(vec):
            projected.add(primitive(vec))
    out = projected | set(lin_rows) | {tuple(-v for v in l) for l in lin_rows}
    return tuple(sorted(out))


def _to_fraction(e) -> Fraction:
    return Fraction(int(e.p), int(e.q))


def _integer_rows(vectors: Sequence[RatVector]) -> List[IntVector]:
    return [primitive(v) for v in vectors]


def v_to_h(cone: ConeV) -> ConeH:
    """
    Inequality form of cone(generators). The result is canonical:
    facet normals projected onto the span of the cone, primitive and sorted,
    and an equation l.x = 0 appears as the pair l, -l.
    """
    rays, lineality = _double_description(_integer_rows(cone.generators), cone.dim)
    return ConeH(cone.dim, _canonical_output(rays, lineality, cone.dim))


def h_to_v(cone: ConeH) -> ConeV:
    """ Generator form of an inequality cone; lineality appears as +/- pairs. """
    rays, lineality = _double_description(_integer_rows(cone.inequalities), cone.dim)
    return ConeV(cone.dim, _canonical_output(rays, lineality, cone.dim))


@lru_cache(maxsize=4096)
def _cached_h_form(cone: ConeV) -> ConeH:
    return v_to_h(cone)


# Oracle predicates

def _same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"cones in dimensions {a.dim} and {b.dim}")


def cone_dim(cone: ConeV) -> int:
    if cone.is_zero:
        return 0
    return sympy.Matrix([list(primitive(g)) for g in cone.generators]).rank()


def contains_point(cone: ConeV, x: Sequence) -> bool:
    """ Exact LP: is x a nonnegative combination of the generators? """
    if len(x) != cone.dim:
        raise DimensionMismatchError(f"point of length {len(x)} for a cone in dimension {cone.dim}")
    if cone.is_zero:
        return is_zero(x)
    columns = cone.generators
    a = [[g[i] for g in columns] for i in range(cone.dim)]
    return find_nonnegative(a, list(x)) is not None


def _has_positive_relation(generators: Sequence[RatVector], target: Sequence, dim: int) -> bool:
    """ Is there lambda >= 1 with sum(lambda_i g_i) = target? """
    shift = [target[i] - sum(g[i] for g in generators) for i in range(dim)]
    a = [[g[i] for g in generators] for i in range(dim)]
    return find_nonnegative(a, shift) is not None


def relint_intersects(a: ConeV, b: ConeV) -> bool:
    """
    Do the relative interiors meet? Decided as the LP lambda, mu >= 1 with
    sum(lambda a_i) = sum(mu b_j). The relative interior of the zero cone is {0},
    which meets relint(b) iff b is a linear subspace.
    """
    _same_dim(a, b)
    if a.is_zero and b.is_zero:
        return True
    if a.is_zero:
        return _has_positive_relation(b.generators, [0] * b.dim, b.dim)
    if b.is_zero:
        return _has_positive_relation(a.generators, [0] * a.dim, a.dim)
    generators = list(a.generators) + [tuple(-v for v in g) for g in b.generators]
    return _has_positive_relation(generators, [0] * a.dim, a.dim)


def cone_subset(a: ConeV, b: ConeV) -> bool:
    """ Every generator of a lies in b; tested against b's (cached) inequality form. """
    _same_dim(a, b)
    h = _cached_h_form(b)
    return all(h.contains(g) for g in a.generators)


def cones_equal(a: ConeV, b: ConeV) -> bool:
    return cone_subset(a, b) and cone_subset(b, a)


def intersect(a: ConeV, b: ConeV) -> ConeV:
    _same_dim(a, b)
    ha, hb = _cached_h_form(a), _cached_h_form(b)
    return h_to_v(ConeH(a.dim, tuple(sorted(set(ha.inequalities) | set(hb.inequalities)))))


def intersect_h(a: ConeV, h: ConeH) -> ConeV:
    """ V-form of a cone intersected with an inequality cone. """
    _same_dim(a, h)
    ha = _cached_h_form(a)
    return h_to_v(ConeH(a.dim, tuple(sorted(set(ha.inequalities) | set(h.inequalities)))))


def orthant(n: int) -> ConeV:
    """ The positive orthant F as cone(e_1..e_n). """
    return ConeV(n, tuple(sorted(unit(n, i) for i in range(1, n + 1))))


def orthant_h(n: int) -> ConeH:
    return ConeH(n, tuple(sorted(unit(n, i) for i in range(1, n + 1))))
