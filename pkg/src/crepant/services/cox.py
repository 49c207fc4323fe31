import logging
from functools import partial
from typing import Any, Dict, List, Tuple

from ..domain.coxrelations import (
    degree_of, iota_substitution_identities, j_generators, mu_generators, mutate, plucker_relations,
    sample_X_point, sigma_relations, to_poly, verify_relations_vanish,
)
from ..domain.errors import InhomogeneousError, RangeError
from ..domain.ports import Executor

logger = logging.getLogger(__name__)

MIN_N = 5
MAX_N = 9
# Seeds of consecutive samples are this far apart so that retries never overlap.
SEED_STRIDE = 16


def check_sample(seed: int, n: int) -> Tuple[bool, bool]:
    """ (the sample satisfies every relation, its mutant is rejected) """
    point = sample_X_point(n, seed)
    return verify_relations_vanish(point), not verify_relations_vanish(mutate(point))


def homogeneous(n: int) -> bool:
    polys = plucker_relations(n) + sigma_relations(n)
    polys += [to_poly(expr, n) for _, expr in mu_generators(n) + j_generators(n)]
    try:
        for p in polys:
            degree_of(p, n)
    except InhomogeneousError as e:
        logger.error("n=%d: %s", n, e)
        return False
    return True


class CoxVerificationService:
    """ Exact checks of the Cox ring presentation: identities, homogeneity and sampled points. """

    def __init__(self, executor: Executor):
        self.executor = executor

    def verify(self, n: int, samples: int = 100, seed: int = 0) -> Dict[str, Any]:
        if not MIN_N <= n <= MAX_N:
            raise RangeError(f"cox verification supports {MIN_N} <= n <= {MAX_N}, got {n}")
        if samples < 1:
            raise RangeError(f"need at least one sample, got {samples}")
        seeds = [seed + k * SEED_STRIDE for k in range(samples)]
        results: List[Tuple[bool, bool]] = self.executor.map(partial(check_sample, n=n), seeds)
        report = {
            "n": n,
            "samples": samples,
            "failures": sum(1 for vanish, _ in results if not vanish),
            "mutants_caught": sum(1 for _, caught in results if caught),
            "identities": "ok" if iota_substitution_identities(n) else "failed",
            "plucker": len(plucker_relations(n)),
            "sigma": len(sigma_relations(n)),
            "homogeneous": homogeneous(n),
        }
        logger.info("cox verification: %s", report)
        return report

    @staticmethod
    def passed(report: Dict[str, Any]) -> bool:
        return (report["failures"] == 0 and report["mutants_caught"] == report["samples"]
                and report["identities"] == "ok" and report["homogeneous"])
