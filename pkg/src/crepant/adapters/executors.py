import logging
from typing import Callable, Iterable, List, TypeVar

import joblib

from ..domain.errors import ConfigError
from ..domain.ports import Executor

T = TypeVar("T")
R = TypeVar("R")

logger = logging.getLogger(__name__)


class SerialExecutor(Executor):
    """ Runs everything in the calling process, in order. """

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        return [fn(item) for item in items]


class JoblibExecutor(Executor):
    """ Process-parallel map over joblib workers; results keep the input order. """

    def __init__(self, workers: int):
        if workers < 1:
            raise ConfigError(f"workers must be positive, got {workers}")
        self.workers = workers

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        logger.debug("dispatching %d tasks to %d workers", len(items), self.workers)
        return joblib.Parallel(n_jobs=self.workers)(joblib.delayed(fn)(item) for item in items)


def executor_for(parallelism: int) -> Executor:
    if parallelism == 1:
        return SerialExecutor()
    return JoblibExecutor(parallelism)
