from abc import ABC, abstractmethod
from typing import IO, Any, Callable, Iterable, List, Mapping, TypeVar

T = TypeVar("T")
R = TypeVar("R")

# Executor Port

class Executor(ABC):
    """ Port for running independent pieces of work. """

    @abstractmethod
    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Applies fn to every item and returns the results in input order.
        fn and the items must be picklable for process-based executors.
        """
        pass

# Report Port

class ReportWriter(ABC):
    """ Port for writing machine-readable results. """

    @abstractmethod
    def write_report(self, report: Mapping[str, Any], stream: IO[str]) -> None:
        """ Writes one flat report. """
        pass

    @abstractmethod
    def write_records(self, records: Iterable[Mapping[str, Any]], stream: IO[str]) -> int:
        """
        Streams records one by one.
        Returns the number written.
        """
        pass
