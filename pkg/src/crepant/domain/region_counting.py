import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import ResourceBoundError, SelfCheckError
from .lp import find_strict
from .values import IntVector, canonical_normal, dot, primitive

if TYPE_CHECKING:  # arrangements imports this module
    from .arrangements import Arrangement
    from .ports import Executor

logger = logging.getLogger(__name__)

MAX_DIM = 8
MAX_HYPERPLANES = 64
CHECK_PRIMES = 3
SCAN_CHUNK = 2_000_000


@dataclass(frozen=True)
class RegionCount:
    regions: int
    method: str
    primes: Tuple[int, ...] = ()
    polynomial: Tuple[int, ...] = ()   # coefficients of chi, highest degree first


def check_bounds(dim: int, hyperplanes: int) -> None:
    if dim > MAX_DIM:
        raise ResourceBoundError(f"dimension {dim} exceeds the bound dim <= {MAX_DIM}")
    if hyperplanes > MAX_HYPERPLANES:
        raise ResourceBoundError(f"{hyperplanes} hyperplanes exceed the bound of {MAX_HYPERPLANES}")


def cutting_normals(normals: Sequence[IntVector], cone_rows: Sequence[IntVector]) -> List[IntVector]:
    """ The normals that are not walls of the cone (walls never split its interior). """
    walls = {canonical_normal(g) for g in cone_rows}
    return [h for h in normals if canonical_normal(h) not in walls]


# The Strategy Interface

class RegionCounter(ABC):
    """ Counts the open regions of a real central arrangement. """

    name = ""

    @abstractmethod
    def count(self, arrangement: 'Arrangement') -> RegionCount:
        pass


# Incremental insertion

@dataclass
class _Region:
    """ An open polyhedral region: rows g with g.x > 0, and a point strictly inside. """
    rows: List[IntVector]
    witness: IntVector


@dataclass(frozen=True)
class Chamber:
    """ A region named by its signs (+1 / -1 per hyperplane), with an interior point. """
    signs: Tuple[int, ...]
    witness: Optional[IntVector] = None


def _negate(v: Sequence[int]) -> IntVector:
    return tuple(-x for x in v)


def _inside(rows: Sequence[IntVector], x: Sequence) -> bool:
    return all(dot(g, x) > 0 for g in rows)


def _step(rows: Sequence[IntVector], h: IntVector, w: IntVector) -> Fraction:
    """ Half the largest t keeping w +/- t h inside every row. """
    limits = [Fraction(dot(g, w), abs(dot(g, h))) for g in rows if dot(g, h) != 0]
    return min(limits) / 2 if limits else Fraction(1)


def _split(region: _Region, h: IntVector) -> List[_Region]:
    w = region.witness
    s = dot(h, w)
    if s == 0:
        t = _step(region.rows, h, w)
        plus = primitive([x + t * y for x, y in zip(w, h)])
        minus = primitive([x - t * y for x, y in zip(w, h)])
        return [_Region(region.rows + [h], plus), _Region(region.rows + [_negate(h)], minus)]

    oriented = h if s > 0 else _negate(h)
    scale = Fraction(s, dot(h, h)) * Fraction(17, 16)
    candidate = [x - scale * y for x, y in zip(w, h)]
    if _inside(region.rows, candidate):
        other = primitive(candidate)
    else:
        found = find_strict(region.rows + [_negate(oriented)], len(w))
        if found is None:
            return [region]
        other = primitive(found)
    return [_Region(region.rows + [oriented], w), _Region(region.rows + [_negate(oriented)], other)]


def enumerate_regions(
    normals: Sequence[IntVector], dim: int, cone_rows: Sequence[IntVector] = ()
) -> List[Chamber]:
    """
    Regions of the arrangement inside the open cone {g.x > 0 for g in cone_rows},
    each with its sign vector and a witness re-checked against every hyperplane.
    Hyperplanes are inserted in the given order.
    """
    rows = [primitive(g) for g in cone_rows]
    if rows:
        start = find_strict(rows, dim)
        if start is None:
            return []
        witness = primitive(start) if any(start) else tuple([0] * dim)
    else:
        witness = tuple([0] * dim)
    boundary = {canonical_normal(g) for g in rows}
    regions = [_Region(rows, witness)]
    for k, h in enumerate(normals):
        if canonical_normal(h) in boundary:
            continue
        regions = [child for region in regions for child in _split(region, tuple(h))]
        logger.debug("inserted hyperplane %d/%d: %d regions", k + 1, len(normals), len(regions))

    chambers = []
    for region in regions:
        signs = []
        for h in normals:
            value = dot(h, region.witness)
            if value == 0:
                raise SelfCheckError(f"region witness {region.witness} lies on hyperplane {h}")
            signs.append(1 if value > 0 else -1)
        if not _inside(rows, region.witness):
            raise SelfCheckError(f"region witness {region.witness} left the cone")
        chambers.append(Chamber(tuple(signs), region.witness))
    return sorted(chambers, key=lambda c: c.signs, reverse=True)


class EnumerateRegionCounter(RegionCounter):
    """ Incremental hyperplane insertion with exact LP certificates. """

    name = "enumerate"

    def count(self, arrangement: 'Arrangement') -> RegionCount:
        check_bounds(arrangement.dim, len(arrangement.hyperplanes))
        chambers = enumerate_regions([h.normal for h in arrangement.hyperplanes], arrangement.dim)
        return RegionCount(len(chambers), self.name)

    def count_in_cone(self, arrangement: 'Arrangement', cone_rows: Sequence[IntVector]) -> RegionCount:
        normals = [h.normal for h in arrangement.hyperplanes]
        check_bounds(arrangement.dim, len(cutting_normals(normals, cone_rows)))
        chambers = enumerate_regions(normals, arrangement.dim, cone_rows)
        return RegionCount(len(chambers), self.name)


# Characteristic polynomial by counting points over F_q

def essential_normals(normals: Sequence[IntVector]) -> List[IntVector]:
    """
    Keeps the pivot columns of the normal matrix. Every column is a combination
    of the pivot columns, so ranks of row subsets (and the intersection lattice)
    are unchanged, and the result spans its whole space.
    """
    if not normals:
        return []
    pivots = sympy.Matrix([list(h) for h in normals]).rref()[1]
    return [tuple(h[j] for j in pivots) for h in normals]


def _prime_floor(normals: Sequence[IntVector]) -> int:
    """
    A q with every minor of the normal matrix smaller than q in absolute value,
    so no prime >= q divides a nonzero minor.
    """
    r = len(normals[0])
    entries = [abs(v) for h in normals for v in h]
    if all(v in (0, 1) for h in normals for v in h):
        # a k x k 0/1 matrix has |det| <= (k+1)^((k+1)/2) / 2^k
        bound_sq = Fraction((r + 1) ** (r + 1), 4 ** r)
    else:
        norms = sorted((sum(v * v for v in h) for h in normals), reverse=True)
        hadamard = 1
        for value in norms[:r]:
            hadamard *= value
        biggest = max(entries)
        bound_sq = Fraction(min(hadamard, r ** r * biggest ** (2 * r)))
    ceiling = -(-bound_sq.numerator // bound_sq.denominator)
    return isqrt(ceiling) + 1


def _rank_two_coefficient(normals: Sequence[IntVector]) -> int:
    """ Sum over rank-2 flats X of (number of hyperplanes containing X) - 1. """
    flats: Dict[Tuple, set] = {}
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            basis = sympy.Matrix([list(normals[i]), list(normals[j])]).rref()[0]
            key = tuple(basis)
            flats.setdefault(key, set()).update((i, j))
    return sum(len(members) - 1 for members in flats.values())


def count_points(normals: Sequence[IntVector], q: int) -> int:
    """
    Points of F_q^r on none of the hyperplanes. The set is stable under scaling,
    so we count normalized points (first nonzero coordinate 1) and multiply by
    q - 1; inside each slice the last coordinate is counted in closed form.
    """
    r = len(normals[0])
    matrix = np.array([[v % q for v in h] for h in normals], dtype=np.int64)
    total = 0
    for lead in range(r):
        free = list(range(lead + 1, r))
        base = matrix[:, lead]
        if not free:
            total += int(np.all(base % q != 0))
            continue
        last, middle = free[-1], free[:-1]
        h_last = matrix[:, last]
        live = h_last != 0
        inverses = np.array([pow(int(v), -1, q) for v in h_last[live]], dtype=np.int64)
        rows_total = q ** len(middle)
        chunk = max(1, SCAN_CHUNK // max(1, len(normals)))
        for start in range(0, rows_total, chunk):
            idx = np.arange(start, min(rows_total, start + chunk), dtype=np.int64)
            partial = np.broadcast_to(base, (len(idx), len(base))).copy()
            for t, j in enumerate(middle):
                digit = (idx // (q ** t)) % q
                partial += digit[:, None] * matrix[None, :, j]
            partial %= q
            dead = np.zeros(len(idx), dtype=bool)
            if (~live).any():
                dead = (partial[:, ~live] == 0).any(axis=1)
            if live.any():
                forbidden = (-partial[:, live] * inverses[None, :]) % q
                forbidden.sort(axis=1)
                distinct = 1 + (np.diff(forbidden, axis=1) != 0).sum(axis=1)
            else:
                distinct = np.zeros(len(idx), dtype=np.int64)
            good = q - distinct
            good[dead] = 0
            total += int(good.sum())
    return (q - 1) * total


def _count_task(task: Tuple[Tuple[IntVector, ...], int]) -> Tuple[int, int]:
    normals, q = task
    return q, count_points(normals, q)


class CharpolyRegionCounter(RegionCounter):
    """
    chi(t) of the essentialized arrangement from point counts over F_q, with
    regions = (-1)^r chi(-1). Leading terms t^r - |A| t^(r-1) + w2 t^(r-2) are
    known, chi(1) = 0 fixes one more unknown, and the rank + 1 primes used leave
    at least three beyond those solving for the rest, which must agree.
    """

    name = "charpoly"

    def __init__(self, executor: Optional['Executor'] = None):
        self._executor = executor

    def _map(self, fn, items):
        if self._executor is None:
            return [fn(item) for item in items]
        return self._executor.map(fn, items)

    def characteristic_polynomial(self, arrangement: 'Arrangement') -> RegionCount:
        check_bounds(arrangement.dim, len(arrangement.hyperplanes))
        normals = essential_normals([h.normal for h in arrangement.hyperplanes])
        if not normals:
            return RegionCount(1, self.name, (), (1,) + (0,) * arrangement.dim)
        r = len(normals[0])
        size = len(normals)
        known: Dict[int, int] = {r: 1, r - 1: -size}
        if r >= 2:
            known[r - 2] = _rank_two_coefficient(normals)
        unknown_degrees = [k for k in range(1, r - 2)]
        need = len(unknown_degrees)

        primes: List[int] = []
        q = _prime_floor(normals) - 1
        while len(primes) < max(r + 1, need + CHECK_PRIMES):
            q = int(sympy.nextprime(q))
            primes.append(q)
        counts = dict(self._map(_count_task, [(tuple(normals), p) for p in primes]))
        logger.debug("point counts: %s", counts)

        # chi(t) = sum_k c_k t^k with c_0 = -(sum of the other coefficients)
        def value_known(t: int) -> int:
            fixed = sum(c * t ** k for k, c in known.items())
            if r >= 3:
                fixed -= sum(known.values())
            return fixed

        coefficients = dict(known)
        if need:
            system = sympy.Matrix([[p ** k - 1 for k in unknown_degrees] for p in primes[:need]])
            rhs = sympy.Matrix([counts[p] - value_known(p) for p in primes[:need]])
            solution = system.LUsolve(rhs)
            for k, value in zip(unknown_degrees, solution):
                if not value.is_integer:
                    raise SelfCheckError(f"non-integral coefficient {value} of t^{k}")
                coefficients[k] = int(value)
        if r >= 3:
            coefficients[0] = -sum(c for k, c in coefficients.items() if k != 0)

        def chi(t: int) -> int:
            return sum(c * t ** k for k, c in coefficients.items())

        if r < 3 and chi(1) != 0:
            raise SelfCheckError("chi(1) != 0 for a nonempty central arrangement")
        for p in primes:
            if chi(p) != counts[p]:
                raise SelfCheckError(f"point count {counts[p]} over F_{p} disagrees with chi({p}) = {chi(p)}")
        regions = (-1) ** r * chi(-1)
        polynomial = tuple(coefficients.get(k, 0) for k in range(r, -1, -1))
        logger.info("charpoly regions=%d, rank %d, primes %s", regions, r, primes)
        return RegionCount(regions, self.name, tuple(primes), polynomial)

    def count(self, arrangement: 'Arrangement') -> RegionCount:
        return self.characteristic_polynomial(arrangement)


def counter_for(method: str, executor: Optional['Executor'] = None) -> RegionCounter:
    if method == EnumerateRegionCounter.name:
        return EnumerateRegionCounter()
    if method == CharpolyRegionCounter.name:
        return CharpolyRegionCounter(executor)
    raise ValueError(f"unknown counting method {method!r}")
