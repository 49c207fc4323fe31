import logging
from functools import partial
from typing import Any, Dict, Iterator, Optional

from ..domain.complexes import (
    MAX_EXACT_N, MIN_N, Complex, count_biconnected, count_from, enumerate_max_biconnected,
    is_full, split_search,
)
from ..domain.errors import RangeError, SelfCheckError
from ..domain.ports import Executor
from ..persistence.json_io import complex_to_dict

logger = logging.getLogger(__name__)

# Fixed, so the work split and hence the output never depend on the worker count.
SPLIT_DEPTH = 6


class ComplexCatalogService:
    """ Counting and listing maximally-biconnected complexes. """

    def __init__(self, executor: Executor, split_depth: int = SPLIT_DEPTH):
        self.executor = executor
        self.split_depth = split_depth

    def count(self, n: int, full_only: bool = False) -> int:
        if not MIN_N <= n <= MAX_EXACT_N:
            raise RangeError(f"exhaustive counting supports {MIN_N} <= n <= {MAX_EXACT_N}, got {n}")
        states = split_search(n, self.split_depth)
        counts = self.executor.map(partial(count_from, full_only=full_only), states)
        total = sum(counts)
        logger.info("n=%d full_only=%s: %d complexes from %d subtrees", n, full_only, total, len(states))
        return total

    def count_report(self, n: int, full_only: bool = False) -> Dict[str, Any]:
        return {"n": n, "full_only": full_only, "count": self.count(n, full_only)}

    def enumerate(self, n: int, full_only: bool = False, limit: Optional[int] = None) -> Iterator[Dict[str, Any]]:
        """ Records {"n", "maximal_faces", "full"} in enumeration order. """
        for d in enumerate_max_biconnected(n, full_only, limit):
            yield self._record(d)

    @staticmethod
    def _record(d: Complex) -> Dict[str, Any]:
        return {**complex_to_dict(d), "full": is_full(d)}

    def hosten_morris(self, n: int) -> Dict[str, Any]:
        """ lambda(n) by both routes; they must agree. """
        by_pairs = self.count(n)
        by_subsets = count_biconnected(n - 1)
        if by_pairs != by_subsets:
            raise SelfCheckError(f"lambda({n}) disagrees: {by_pairs} vs {by_subsets}")
        return {"n": n, "by_pairs": by_pairs, "by_subsets": by_subsets, "lambda": by_pairs}
