import csv
import json
from typing import IO, Any, Iterable, Mapping

from ..domain.ports import ReportWriter
from ..persistence.json_io import dump_line


def _cell(value: Any) -> str:
    """ Scalars as text, nested values as compact JSON. """
    if isinstance(value, (list, tuple, dict)):
        return dump_line(value)
    if value is None:
        return ""
    return str(value)


class JsonReportWriter(ReportWriter):
    """ A single JSON object per report; NDJSON for record streams. """

    def write_report(self, report: Mapping[str, Any], stream: IO[str]) -> None:
        stream.write(json.dumps(dict(report)) + "\n")

    def write_records(self, records: Iterable[Mapping[str, Any]], stream: IO[str]) -> int:
        count = 0
        for record in records:
            stream.write(dump_line(dict(record)) + "\n")
            count += 1
        return count


class CsvReportWriter(ReportWriter):
    """ Header row from the first mapping's keys. """

    def write_report(self, report: Mapping[str, Any], stream: IO[str]) -> None:
        self.write_records([report], stream)

    def write_records(self, records: Iterable[Mapping[str, Any]], stream: IO[str]) -> int:
        writer = None
        count = 0
        for record in records:
            if writer is None:
                writer = csv.DictWriter(stream, fieldnames=list(record.keys()), lineterminator="\n")
                writer.writeheader()
            writer.writerow({k: _cell(v) for k, v in record.items()})
            count += 1
        return count


class PlainReportWriter(ReportWriter):
    """ "key: value" lines for people. """

    def write_report(self, report: Mapping[str, Any], stream: IO[str]) -> None:
        width = max((len(k) for k in report), default=0)
        for key, value in report.items():
            stream.write(f"{key.ljust(width)} : {_cell(value)}\n")

    def write_records(self, records: Iterable[Mapping[str, Any]], stream: IO[str]) -> int:
        count = 0
        for record in records:
            stream.write(" ".join(f"{k}={_cell(v)}" for k, v in record.items()) + "\n")
            count += 1
        return count


def writer_for(output_format: str) -> ReportWriter:
    writers = {"json": JsonReportWriter, "csv": CsvReportWriter, "plain": PlainReportWriter}
    return writers[output_format]()
