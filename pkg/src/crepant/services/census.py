import logging
from collections import Counter
from typing import Any, Dict, Iterator, List

from ..domain.complexes import split_search
from ..domain.errors import RangeError
from ..domain.hyper_cones import CENSUS_MAX_N, CENSUS_MIN_N, ResolutionRecord, census_from, tally_from
from ..domain.ports import Executor
from ..persistence.json_io import record_to_dict
from .catalog import SPLIT_DEPTH

logger = logging.getLogger(__name__)


class CensusService:
    """ Classifies every crepant resolution for a given n as projective or not. """

    def __init__(self, executor: Executor, split_depth: int = SPLIT_DEPTH, batch: int = 8):
        self.executor = executor
        self.split_depth = split_depth
        self.batch = batch

    def _states(self, n: int):
        if not CENSUS_MIN_N <= n <= CENSUS_MAX_N:
            raise RangeError(f"census supports {CENSUS_MIN_N} <= n <= {CENSUS_MAX_N}, got {n}")
        return split_search(n, self.split_depth)

    def summary(self, n: int) -> Dict[str, Any]:
        """ {"n", "total", "projective", "nonprojective", "full", "nonfull"} """
        totals: Counter = Counter()
        for counts in self.executor.map(tally_from, self._states(n)):
            totals.update(counts)
        report = {"n": n}
        for key in ("total", "projective", "nonprojective", "full", "nonfull"):
            report[key] = totals[key]
        logger.info("census n=%d: %s", n, report)
        return report

    def records(self, n: int) -> Iterator[ResolutionRecord]:
        """ Every record in enumeration order, computed a batch of subtrees at a time. """
        states = self._states(n)
        for start in range(0, len(states), self.batch):
            chunk: List[List[ResolutionRecord]] = self.executor.map(census_from, states[start:start + self.batch])
            for records in chunk:
                yield from records

    def record_dicts(self, n: int) -> Iterator[Dict[str, Any]]:
        for record in self.records(n):
            yield record_to_dict(record)
