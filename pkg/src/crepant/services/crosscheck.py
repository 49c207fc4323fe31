import logging
from functools import partial
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

from ..domain.bunches import phi_from_complex
from ..domain.complexes import enumerate_max_biconnected, is_full
from ..domain.errors import RangeError
from ..domain.hyper_cones import (
    CornerCone, HyperCone, balanced_cone, contains_corner, contains_F, free_orbit_data, in_omega_X,
    meet_C0, orbit_data_realizable, psi_membership,
)
from ..domain.polygon_cones import (
    PolygonCone, all_partitions, dual_generators, free_partitions, generators, relint_disjoint_free, subset_free,
)
from ..domain.ports import Executor
from ..domain.ratgeom import ConeH, ConeV, cone_subset, h_to_v, intersect_h, orthant, relint_intersects
from ..domain.subsets import Partition, enumerate_partitions, format_subset, full_mask, submasks

logger = logging.getLogger(__name__)

MIN_N = 5
MAX_N = 6

# (cases, agreements, first few disagreements)
SuiteResult = Tuple[int, int, List[str]]
MAX_REPORTED = 5


def _tally(cases) -> SuiteResult:
    total = agree = 0
    failures: List[str] = []
    for label, closed, oracle in cases:
        total += 1
        if closed == oracle:
            agree += 1
        elif len(failures) < MAX_REPORTED:
            failures.append(f"{label}: closed form {closed}, oracle {oracle}")
    return total, agree, failures


# Suites: each yields (label, closed-form answer, oracle answer)

def _refinement(n: int, max_k: Optional[int]):
    cones = [PolygonCone(n, p) for p in free_partitions(n)]
    for p in cones:
        for q in cones:
            yield f"{p} in {q}", subset_free(p, q), cone_subset(p.to_cone_v(), q.to_cone_v())


def _duality(n: int, max_k: Optional[int]):
    for p in free_partitions(n):
        c = PolygonCone(n, p)
        cut_out = h_to_v(ConeH.of(n, dual_generators(c)))
        yield f"dual of {c}", cut_out.generators, ConeV.of(n, generators(c)).generators


def _disjoint(n: int, max_k: Optional[int]):
    cones = [PolygonCone(n, p) for p in free_partitions(n)]
    for a, p in enumerate(cones):
        for q in cones[a:]:
            yield f"{p} / {q}", relint_disjoint_free(p, q), not relint_intersects(p.to_cone_v(), q.to_cone_v())


def _corner(n: int, max_k: Optional[int]):
    corners = [(i, CornerCone(n, i).to_cone_v()) for i in range(1, n + 1)]
    for c in free_orbit_data(n, max_k):
        for i, corner in corners:
            yield f"C_{i} in {c}", contains_corner(c, i), cone_subset(corner, c.to_cone_v())


def _orthant(n: int, max_k: Optional[int]):
    f = orthant(n)
    for c in free_orbit_data(n, max_k):
        yield f"F in {c}", contains_F(c), cone_subset(f, c.to_cone_v())


def _meet(n: int, max_k: Optional[int]):
    # pair vectors are extreme and primitive, so the sorted generators name the cone
    named = {ConeV.of(n, generators(PolygonCone(n, p))).generators: p for p in enumerate_partitions(n)}
    c0 = balanced_cone(n)
    for c in free_orbit_data(n, max_k):
        if contains_F(c):
            continue
        meet = intersect_h(c.to_cone_v(), c0)
        yield f"{c} meet C_0", meet_C0(c).partition, named.get(meet.generators)


def _contained_partitions(n: int, cones: List[HyperCone]) -> Dict[HyperCone, FrozenSet[Partition]]:
    """ For each hyperpolygon cone, the free polygon cones lying inside it (by the oracle). """
    polygons = [(p, PolygonCone(n, p).to_cone_v()) for p in free_partitions(n)]
    return {c: frozenset(p for p, v in polygons if cone_subset(v, c.to_cone_v())) for c in cones}


def _psi(n: int, max_k: Optional[int]):
    cones = free_orbit_data(n, max_k)
    inside = _contained_partitions(n, cones)
    corners = [CornerCone(n, i).to_cone_v() for i in range(1, n + 1)]
    for d in enumerate_max_biconnected(n):
        if is_full(d):
            phi = phi_from_complex(d).partitions
            for c in cones:
                yield f"{c} in Psi({d})", psi_membership(d, c), bool(inside[c] & phi)
        else:
            missing = next(i for i in range(1, n + 1) if not d.contains(1 << (i - 1)))
            for c in cones:
                yield f"{c} in Psi({d})", psi_membership(d, c), cone_subset(corners[missing - 1], c.to_cone_v())


def _orbit(n: int, max_k: Optional[int]):
    ks = sorted(submasks(full_mask(n)))
    for p in all_partitions(n):
        for k in ks:
            yield f"({p}, K={format_subset(k)})", in_omega_X(p, k), orbit_data_realizable(p, k)


SUITES: Dict[str, Callable] = {
    "refinement_containment": _refinement,
    "duality": _duality,
    "disjoint_interiors": _disjoint,
    "corner_containment": _corner,
    "F_containment": _orthant,
    "meet_C0": _meet,
    "psi_membership": _psi,
    "orbit_cones": _orbit,
}


def run_suite(name: str, n: int, max_k: Optional[int] = None) -> SuiteResult:
    result = _tally(SUITES[name](n, max_k))
    logger.info("suite %s n=%d: %d/%d agree", name, n, result[1], result[0])
    return result


class OracleCrosscheckService:
    """
    Runs every closed-form predicate against the exact cone oracle on all
    instances of a given n. max_k bounds #K for the hyperpolygon suites.
    """

    def __init__(self, executor: Executor):
        self.executor = executor

    def crosscheck(self, n: int, max_k: Optional[int] = None, suites: Optional[List[str]] = None) -> Dict[str, Any]:
        if not MIN_N <= n <= MAX_N:
            raise RangeError(f"oracle crosscheck supports {MIN_N} <= n <= {MAX_N}, got {n}")
        names = list(SUITES) if suites is None else suites
        for name in names:
            if name not in SUITES:
                raise RangeError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
        results = self.executor.map(partial(run_suite, n=n, max_k=max_k), names)
        report: Dict[str, Any] = {"n": n, "suites": {}, "failures": []}
        for name, (cases, agree, failures) in zip(names, results):
            report["suites"][name] = {"cases": cases, "agree": agree}
            report["failures"].extend(f"{name}: {f}" for f in failures)
        if report["failures"]:
            logger.warning("oracle crosscheck n=%d: %d disagreements", n, len(report["failures"]))
        return report
