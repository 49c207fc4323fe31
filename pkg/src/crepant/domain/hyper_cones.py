import enum
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import sympy

from .bunches import complex_projective_witness
from .complexes import (
    Complex, SearchState, enumerate_from, enumerate_max_biconnected, is_full, is_maximal_biconnected,
)
from .errors import NotFreeError, PreconditionError, RangeError
from .polygon_cones import PolygonCone, eta, generators, v_functional
from .ratgeom import ConeH, ConeV, h_to_v, v_to_h
from .subsets import (
    Mask, Partition, enumerate_partitions, format_subset, full_mask, is_subset,
    members_of, size, submasks,
)
from .values import IntVector, unit

logger = logging.getLogger(__name__)

CENSUS_MIN_N = 5
CENSUS_MAX_N = 7


# Hyperpolygon orbit cones
#
# omega_{P,K} = omega_P + Cone(-e_k : k in K).

@dataclass(frozen=True)
class HyperCone:
    n: int
    partition: Partition
    k: Mask

    def __post_init__(self):
        if self.partition.n != self.n:
            raise PreconditionError(f"partition lives on [{self.partition.n}], cone on [{self.n}]")
        if self.k & ~full_mask(self.n):
            raise RangeError(f"K = {format_subset(self.k)} is not a subset of [{self.n}]")

    @property
    def is_free(self) -> bool:
        return in_omega_X_free(self.partition, self.k)

    def to_cone_v(self) -> ConeV:
        return ConeV(self.n, tuple(generators_hyper(self)))

    def __str__(self) -> str:
        return f"omega[{self.partition}; K={format_subset(self.k)}]"


def generators_hyper(c: HyperCone) -> List[IntVector]:
    """ The polygon generators of omega_P, then -e_k for k in K. """
    out = generators(PolygonCone(c.n, c.partition))
    for k in members_of(c.k):
        out.append(tuple(-v for v in unit(c.n, k)))
    return out


def _meeting(p: Partition, k: Mask) -> Tuple[bool, bool]:
    """ (at least four parts meet K, no part meets K in exactly one element) """
    meets = sum(1 for part in p.parts if part & k)
    no_single = all(size(part & k) != 1 for part in p.parts)
    return meets >= 4, no_single


def in_omega_X(p: Partition, k: Mask) -> bool:
    many, no_single = _meeting(p, k)
    return many or no_single


def in_omega_X_free(p: Partition, k: Mask) -> bool:
    if not p.is_of_n:
        return False
    many, no_single = _meeting(p, k)
    return many or (no_single and len(p) >= 3) or (no_single and len(p) >= 2 and k != 0)


def orbit_data_realizable(p: Partition, k: Mask) -> bool:
    """
    Point-sampling test for omega_{P,K} being an orbit cone: part J gets the
    moment-curve vector (1, t_J, t_J^2) with distinct t_J, elements outside the
    ground set get 0, and we ask for a kernel vector of the 3 x #K matrix of
    K's vectors with no zero coordinate. Over an infinite field this exists iff
    every coordinate is nonzero in some kernel basis vector.
    """
    ks = members_of(k)
    if not ks:
        return True
    columns = []
    for e in ks:
        part = p.part_of(e)
        if part == 0:
            columns.append([0, 0, 0])
        else:
            t = p.parts.index(part) + 1
            columns.append([1, t, t * t])
    matrix = sympy.Matrix(3, len(ks), lambda r, c: columns[c][r])
    kernel = matrix.nullspace()
    return all(any(vec[j] != 0 for vec in kernel) for j in range(len(ks)))


def _require_free(c: HyperCone) -> None:
    if not c.is_free:
        raise NotFreeError(f"{c} is not free")


def contains_corner(c: HyperCone, i: int) -> bool:
    """ C_i lies in omega_{P,K} iff K meets the complement of the part containing i. """
    _require_free(c)
    if not 1 <= i <= c.n:
        raise RangeError(f"corner index must be in 1..{c.n}, got {i}")
    return c.k & ~c.partition.part_of(i) != 0


def contains_F(c: HyperCone) -> bool:
    """ F lies in omega_{P,K} iff K is nonempty and inside no single part. """
    _require_free(c)
    return c.k != 0 and not any(is_subset(c.k, part) for part in c.partition.parts)


def meet_C0(c: HyperCone) -> PolygonCone:
    """ omega_{P,K} meet C_0: omega_P when K is empty, eta_I when K lies in the part I. """
    if contains_F(c):
        raise PreconditionError(f"{c} contains F; its meet with C_0 is all of C_0")
    if c.k == 0:
        return PolygonCone(c.n, c.partition)
    part = next(part for part in c.partition.parts if is_subset(c.k, part))
    return eta(c.n, part)


# Corner cones

@dataclass(frozen=True)
class CornerCone:
    """ i = 0 is the balanced cone C_0; i >= 1 is the corner chamber C_i. """
    n: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i <= self.n:
            raise RangeError(f"corner index must be in 0..{self.n}, got {self.i}")

    def to_cone_h(self) -> ConeH:
        if self.i == 0:
            return balanced_cone(self.n)
        return v_to_h(self.to_cone_v())

    def to_cone_v(self) -> ConeV:
        if self.i == 0:
            return h_to_v(balanced_cone(self.n))
        e_i = unit(self.n, self.i)
        gens = [e_i] + [
            tuple(x + y for x, y in zip(e_i, unit(self.n, j))) for j in range(1, self.n + 1) if j != self.i
        ]
        return ConeV(self.n, tuple(gens))


def balanced_cone(n: int) -> ConeH:
    """ C_0: theta_i >= 0 and theta_i <= sum of the other coordinates. """
    rows = [unit(n, i) for i in range(1, n + 1)] + [v_functional(n, 1 << (i - 1)) for i in range(1, n + 1)]
    return ConeH(n, tuple(sorted(rows)))


def corner_witness(n: int, i: int) -> IntVector:
    """ 1 + (n-1) e_i: generic and in the interior of C_i. """
    if not 1 <= i <= n:
        raise RangeError(f"corner index must be in 1..{n}, got {i}")
    return tuple(n if j == i else 1 for j in range(1, n + 1))


# Psi

def free_orbit_data(n: int, max_k: Optional[int] = None) -> List[HyperCone]:
    """ Every free orbit datum (P, K) with #K <= max_k (no bound when None). """
    out = []
    ks = sorted(submasks(full_mask(n)))
    if max_k is not None:
        ks = [k for k in ks if size(k) <= max_k]
    for p in enumerate_partitions(n, min_parts=2):
        for k in ks:
            if in_omega_X_free(p, k):
                out.append(HyperCone(n, p, k))
    return out


def _missing_singleton(d: Complex) -> int:
    """ The i with {i} not a face, or 0 for a full complex. """
    for i in range(1, d.n + 1):
        if not d.contains(1 << (i - 1)):
            return i
    return 0


def _psi_member(d: Complex, c: HyperCone, corner: int) -> bool:
    if corner:
        return contains_corner(c, corner)
    if contains_F(c):
        return True
    if c.k == 0:
        return len(c.partition) >= 3 and all(d.contains(part) for part in c.partition.parts)
    part = next(part for part in c.partition.parts if is_subset(c.k, part))
    return size(part) <= c.n - 2 and d.contains(part)


def psi_membership(d: Complex, c: HyperCone) -> bool:
    """
    Whether the free cone c belongs to Psi_d. For the non-full complex generated
    by {i}^c that is containment of C_i; for a full complex it is containment of
    some member of Phi_d, decided through meet_C0.
    """
    if not is_maximal_biconnected(d):
        raise PreconditionError(f"{d} is not maximally-biconnected")
    _require_free(c)
    return _psi_member(d, c, _missing_singleton(d))


def psi_bunch(d: Complex, max_k: Optional[int] = None) -> List[HyperCone]:
    if not is_maximal_biconnected(d):
        raise PreconditionError(f"{d} is not maximally-biconnected")
    corner = _missing_singleton(d)
    return [c for c in free_orbit_data(d.n, max_k) if _psi_member(d, c, corner)]


# Census

class ResolutionKind(enum.Enum):
    PROJECTIVE = "projective"
    NON_PROJECTIVE = "non-projective"


@dataclass(frozen=True)
class ResolutionRecord:
    """ One crepant resolution: its complex, whether it is projective, and a chamber point if so. """
    complex: Complex
    kind: ResolutionKind
    witness: Optional[IntVector] = None

    def __post_init__(self):
        if (self.kind is ResolutionKind.PROJECTIVE) != (self.witness is not None):
            raise PreconditionError("a projective record carries a witness and only then")


def record_for(d: Complex) -> ResolutionRecord:
    corner = _missing_singleton(d)
    if corner:
        return ResolutionRecord(d, ResolutionKind.PROJECTIVE, corner_witness(d.n, corner))
    witness = complex_projective_witness(d)
    if witness is None:
        return ResolutionRecord(d, ResolutionKind.NON_PROJECTIVE)
    return ResolutionRecord(d, ResolutionKind.PROJECTIVE, witness)


def _check_census_range(n: int) -> None:
    if not CENSUS_MIN_N <= n <= CENSUS_MAX_N:
        raise RangeError(f"census supports {CENSUS_MIN_N} <= n <= {CENSUS_MAX_N}, got {n}")


def census(n: int) -> Iterator[ResolutionRecord]:
    """ One record per maximally-biconnected complex on [n], in enumeration order. """
    _check_census_range(n)
    for d in enumerate_max_biconnected(n):
        yield record_for(d)


def census_from(state: SearchState) -> List[ResolutionRecord]:
    """ Records for one subtree of the complex search. """
    return [record_for(d) for d in enumerate_from(state)]


def tally(records) -> Dict[str, int]:
    counts = {"total": 0, "projective": 0, "nonprojective": 0, "full": 0, "nonfull": 0}
    for record in records:
        counts["total"] += 1
        if record.kind is ResolutionKind.PROJECTIVE:
            counts["projective"] += 1
        else:
            counts["nonprojective"] += 1
        counts["full" if is_full(record.complex) else "nonfull"] += 1
    return counts


def tally_from(state: SearchState) -> Dict[str, int]:
    return tally(record_for(d) for d in enumerate_from(state))


def census_summary(n: int) -> Dict[str, int]:
    """ Totals of census(n) without keeping the records. """
    _check_census_range(n)
    counts = tally(census(n))
    logger.info("census n=%d: %s", n, counts)
    return {"n": n, **counts}
