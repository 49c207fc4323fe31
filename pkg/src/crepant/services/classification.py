import logging
from typing import Any, Dict, List

from ..domain.arrangements import balanced_cone, build_A, chambers_to_complexes, enumerate_chambers
from ..domain.bunches import (
    complex_from_bunch, complex_projective_witness, is_maximal_bunch, phi_from_complex, projective_witness,
)
from ..domain.complexes import Complex, SearchState, enumerate_from, enumerate_max_biconnected, split_search
from ..domain.errors import RangeError, SelfCheckError
from ..domain.ports import Executor
from .catalog import SPLIT_DEPTH

logger = logging.getLogger(__name__)

MIN_N = 5
MAX_N = 6


def _classify_one(d: Complex) -> Dict[str, int]:
    phi = phi_from_complex(d)
    if not is_maximal_bunch(phi):
        raise SelfCheckError(f"the bunch of {d} is not maximal")
    if complex_from_bunch(phi) != d:
        raise SelfCheckError(f"the bunch of {d} does not give the complex back")
    return {"cones": len(phi), "projective": int(projective_witness(phi) is not None)}


def classify_subtree(state: SearchState) -> Dict[str, int]:
    """ Totals for the full complexes below one search state. """
    totals = {"complexes": 0, "round_trips": 0, "projective": 0, "cones": 0}
    for d in enumerate_from(state, full_only=True):
        result = _classify_one(d)
        totals["complexes"] += 1
        totals["round_trips"] += 1
        totals["projective"] += result["projective"]
        totals["cones"] += result["cones"]
    return totals


class BunchClassificationService:
    """
    Runs the complex -> maximal bunch -> complex correspondence over every full
    maximally-biconnected complex on [n] and counts the projective bunches.
    """

    def __init__(self, executor: Executor, split_depth: int = SPLIT_DEPTH):
        self.executor = executor
        self.split_depth = split_depth

    def classify(self, n: int) -> Dict[str, Any]:
        if not MIN_N <= n <= MAX_N:
            raise RangeError(f"bunch classification supports {MIN_N} <= n <= {MAX_N}, got {n}")
        parts: List[Dict[str, int]] = self.executor.map(classify_subtree, split_search(n, self.split_depth))
        report: Dict[str, Any] = {"n": n, "maximal_bunches": 0, "round_trips": 0, "projective": 0, "nonprojective": 0, "orbit_cones": 0}
        for part in parts:
            report["maximal_bunches"] += part["complexes"]
            report["round_trips"] += part["round_trips"]
            report["projective"] += part["projective"]
            report["orbit_cones"] += part["cones"]
        report["nonprojective"] = report["maximal_bunches"] - report["projective"]
        logger.info("bunch classification n=%d: %s", n, report)
        return report

    def chamber_consistency(self, n: int) -> Dict[str, Any]:
        """
        Maps every chamber of A(n) inside C_0 to its complex. The map must be
        injective with image exactly the projective full complexes.
        """
        if not MIN_N <= n <= MAX_N:
            raise RangeError(f"chamber consistency supports {MIN_N} <= n <= {MAX_N}, got {n}")
        a = build_A(n)
        chambers = enumerate_chambers(a, balanced_cone(n))
        images = chambers_to_complexes(a, chambers)
        projective = {
            d for d in enumerate_max_biconnected(n, full_only=True) if complex_projective_witness(d) is not None
        }
        distinct = set(images)
        report = {
            "n": n,
            "chambers": len(chambers),
            "distinct_complexes": len(distinct),
            "projective_full": len(projective),
            "matches": len(distinct) == len(chambers) and distinct == projective,
        }
        logger.info("chamber consistency n=%d: %s", n, report)
        return report
