import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

import sympy

from .bunches import bunch_from_theta, complex_from_bunch, complex_projective_witness
from .complexes import Complex, segre_complexes
from .errors import DimensionMismatchError, ParityError, PreconditionError, RangeError
from .hyper_cones import balanced_cone
from .lp import find_strict
from .polygon_cones import v_functional
from .ratgeom import ConeH, orthant_h
from .region_counting import (
    Chamber, EnumerateRegionCounter, RegionCount, check_bounds, counter_for, cutting_normals, enumerate_regions,
    essential_normals,
)
from .subsets import full_mask, size
from .values import IntVector, Rational, canonical_normal, dot, is_zero, primitive, unit

if TYPE_CHECKING:
    from .ports import Executor

logger = logging.getLogger(__name__)

__all__ = [
    "Hyperplane", "Arrangement", "Chamber", "build_A", "build_B", "localize", "restrict",
    "essentialize", "count_regions", "region_count", "enumerate_chambers", "count_regions_in_cone",
    "count_chambers_at_ray", "chamber_to_complex", "chambers_to_complexes",
    "region_count_in_cone", "region_count_in_C0", "count_C0_chambers", "chamber_point", "segre_projective_count", "positive_orthant", "balanced_cone",
]


@dataclass(frozen=True)
class Hyperplane:
    """ normal.x = 0, with the normal primitive and its first nonzero entry positive. """
    normal: IntVector

    def __post_init__(self):
        if is_zero(self.normal):
            raise PreconditionError("a hyperplane needs a nonzero normal")
        object.__setattr__(self, "normal", canonical_normal(self.normal))

    @property
    def dim(self) -> int:
        return len(self.normal)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: Tuple[Hyperplane, ...]

    def __post_init__(self):
        unique = sorted(set(self.hyperplanes), key=lambda h: h.normal, reverse=True)
        for h in unique:
            if h.dim != self.dim:
                raise DimensionMismatchError(f"normal {h.normal} in an arrangement of dimension {self.dim}")
        object.__setattr__(self, "hyperplanes", tuple(unique))

    @classmethod
    def of(cls, dim: int, normals: Iterable[Sequence[Rational]]) -> 'Arrangement':
        return cls(dim, tuple(Hyperplane(tuple(v)) for v in normals))

    @property
    def normals(self) -> List[IntVector]:
        return [h.normal for h in self.hyperplanes]

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __contains__(self, normal: Sequence[Rational]) -> bool:
        return not is_zero(normal) and Hyperplane(tuple(normal)) in self.hyperplanes


# Construction

def build_A(n: int) -> Arrangement:
    """ Every H_I (I and its complement give one hyperplane) plus the n coordinate hyperplanes. """
    if n < 4:
        raise RangeError(f"the arrangement A needs n >= 4, got {n}")
    normals = [v_functional(n, mask) for mask in range(1 << (n - 1))]
    normals += [unit(n, i) for i in range(1, n + 1)]
    return Arrangement.of(n, normals)


def build_B(n: int, m: int) -> Arrangement:
    """ sum of z_i over I = 0 in Q^(n-1), one hyperplane per m-subset I of [n-1]. """
    if m < 3:
        raise RangeError(f"the arrangement B needs m >= 3, got {m}")
    if n != 2 * m:
        raise ParityError(f"the arrangement B needs n = 2m, got n={n}, m={m}")
    top = full_mask(n - 1)
    normals = [
        tuple(1 if (mask >> i) & 1 else 0 for i in range(n - 1))
        for mask in range(1, top + 1) if size(mask) == m
    ]
    return Arrangement.of(n - 1, normals)


def localize(a: Arrangement, theta: Sequence[Rational]) -> Arrangement:
    """ The hyperplanes through theta. """
    if len(theta) != a.dim:
        raise DimensionMismatchError(f"point of length {len(theta)} for dimension {a.dim}")
    if is_zero(theta):
        raise PreconditionError("cannot localize at the origin")
    return Arrangement(a.dim, tuple(h for h in a.hyperplanes if dot(h.normal, theta) == 0))


def restrict(a: Arrangement, h: Hyperplane) -> Arrangement:
    """ The traces K meet H of the other hyperplanes, in coordinates of a basis of H. """
    if h.dim != a.dim:
        raise DimensionMismatchError(f"hyperplane of dimension {h.dim} for dimension {a.dim}")
    basis = [
        [Fraction(int(e.p), int(e.q)) for e in vec]
        for vec in sympy.Matrix([list(h.normal)]).nullspace()
    ]
    normals = []
    for k in a.hyperplanes:
        trace = [dot(k.normal, b) for b in basis]
        if not is_zero(trace):
            normals.append(primitive(trace))
    return Arrangement.of(a.dim - 1, normals)


def essentialize(a: Arrangement) -> Arrangement:
    """ An arrangement with the same intersection lattice whose normals span its space. """
    normals = essential_normals(a.normals)
    if not normals:
        return a
    return Arrangement.of(len(normals[0]), normals)


# Counting

def region_count(a: Arrangement, method: str = "enumerate", executor: Optional['Executor'] = None) -> RegionCount:
    """ count_regions with the counting details (method, primes, characteristic polynomial). """
    result = counter_for(method, executor).count(a)
    logger.info("%d regions of %d hyperplanes in dimension %d (%s)", result.regions, len(a), a.dim, method)
    return result


def count_regions(a: Arrangement, method: str = "enumerate", executor: Optional['Executor'] = None) -> int:
    return region_count(a, method, executor).regions


def _check_boundary(a: Arrangement, cone: ConeH) -> None:
    if cone.dim != a.dim:
        raise DimensionMismatchError(f"cone of dimension {cone.dim} for an arrangement of dimension {a.dim}")
    for row in cone.inequalities:
        if row not in a:
            raise PreconditionError(f"bounding hyperplane {canonical_normal(row)} is not in the arrangement")


def enumerate_chambers(a: Arrangement, cone: Optional[ConeH] = None) -> List[Chamber]:
    """ The regions of a (inside the open cone, when given), each with an interior witness. """
    rows: Tuple = ()
    if cone is not None:
        _check_boundary(a, cone)
        rows = cone.inequalities
    check_bounds(a.dim, len(cutting_normals(a.normals, rows)))
    chambers = enumerate_regions(a.normals, a.dim, rows)
    logger.info("enumerated %d chambers", len(chambers))
    return chambers


def _sign_symmetric(a: Arrangement) -> bool:
    """ Whether every coordinate sign flip maps the arrangement to itself. """
    normals = set(a.normals)
    for i in range(a.dim):
        for v in normals:
            flipped = tuple(-x if j == i else x for j, x in enumerate(v))
            if canonical_normal(flipped) not in normals:
                return False
    return True


def region_count_in_cone(
    a: Arrangement, cone: ConeH, method: str = "enumerate", executor: Optional['Executor'] = None
) -> RegionCount:
    """
    Regions lying inside the cone. The enumerate method works for any cone
    bounded by hyperplanes of a. The charpoly method handles the positive
    orthant of a coordinate-sign-symmetric arrangement, where each of the
    2^dim orthants holds the same number of regions.
    """
    _check_boundary(a, cone)
    if method == EnumerateRegionCounter.name:
        return EnumerateRegionCounter().count_in_cone(a, cone.inequalities)
    if set(map(canonical_normal, cone.inequalities)) != set(positive_orthant(a.dim).inequalities):
        raise PreconditionError("the charpoly method only counts regions in the positive orthant")
    if not _sign_symmetric(a):
        raise PreconditionError("the charpoly method needs an arrangement symmetric under coordinate sign flips")
    total = region_count(a, method, executor)
    return replace(total, regions=total.regions // (1 << a.dim))


def count_regions_in_cone(
    a: Arrangement, cone: ConeH, method: str = "enumerate", executor: Optional['Executor'] = None
) -> int:
    return region_count_in_cone(a, cone, method, executor).regions


def region_count_in_C0(n: int, method: str = "enumerate", executor: Optional['Executor'] = None) -> RegionCount:
    """ M(n): chambers of A(n) in C_0. By charpoly, the F count less the n corner chambers. """
    a = build_A(n)
    if method == EnumerateRegionCounter.name:
        return region_count_in_cone(a, balanced_cone(n), method)
    in_f = region_count_in_cone(a, positive_orthant(n), method, executor)
    return replace(in_f, regions=in_f.regions - n)


def count_C0_chambers(n: int, method: str = "enumerate", executor: Optional['Executor'] = None) -> int:
    return region_count_in_C0(n, method, executor).regions


def count_chambers_at_ray(
    a: Arrangement, theta: Sequence[Rational], method: str = "enumerate", executor: Optional['Executor'] = None
) -> int:
    """ Chambers whose closure contains theta, counted as regions of the localization. """
    return count_regions(localize(a, theta), method, executor)


# Chambers and complexes

def chamber_point(a: Arrangement, chamber: Chamber) -> IntVector:
    """ An integer point with sign(normal.x) = sign for every hyperplane. """
    if len(chamber.signs) != len(a):
        raise DimensionMismatchError(f"{len(chamber.signs)} signs for {len(a)} hyperplanes")
    rows = [tuple(s * v for v in h.normal) for s, h in zip(chamber.signs, a.hyperplanes)]
    point = find_strict(rows, a.dim)
    if point is None:
        raise PreconditionError(f"the sign vector {chamber.signs} names no region")
    return primitive(point)


def chamber_to_complex(a: Arrangement, chamber: Chamber) -> Complex:
    """ The complex of the maximal bunch attached to any point of the chamber. """
    theta = chamber_point(a, chamber)
    n = a.dim
    if any(t <= 0 for t in theta) or any(dot(v_functional(n, 1 << (i - 1)), theta) <= 0 for i in range(1, n + 1)):
        raise PreconditionError(f"chamber through {theta} is not inside C_0 and F")
    return complex_from_bunch(bunch_from_theta(theta), validate=False)


def chambers_to_complexes(a: Arrangement, chambers: Iterable[Chamber]) -> List[Complex]:
    return [chamber_to_complex(a, ch) for ch in chambers]


def segre_projective_count(n: int) -> int:
    """ Segre complexes on [n] whose bunch comes from a chamber. """
    count = sum(1 for d in segre_complexes(n) if complex_projective_witness(d) is not None)
    logger.info("%d projective segre complexes on [%d]", count, n)
    return count


def positive_orthant(n: int) -> ConeH:
    return orthant_h(n)
