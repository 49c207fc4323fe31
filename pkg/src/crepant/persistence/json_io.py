import json
import logging
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence

from ..domain.arrangements import Arrangement
from ..domain.bunches import Bunch
from ..domain.complexes import Complex
from ..domain.errors import PreconditionError
from ..domain.hyper_cones import ResolutionKind, ResolutionRecord
from ..domain.polygon_cones import PolygonCone
from ..domain.subsets import Partition, members_of
from ..domain.values import Rational, format_rational, parse_rational

logger = logging.getLogger(__name__)


# Values

def encode_vector(vector: Optional[Sequence[Rational]]) -> Optional[List[str]]:
    """ Rationals as "p/q" strings (integers as "p"); no floats. """
    if vector is None:
        return None
    return [format_rational(v) for v in vector]


def decode_vector(data: Optional[Sequence[Any]]) -> Optional[tuple]:
    """ Integers stay int; "p/q" strings become Fraction unless integral. """
    if data is None:
        return None
    out = []
    for item in data:
        value = parse_rational(str(item))
        out.append(int(value) if value.denominator == 1 else value)
    return tuple(out)


def complex_to_dict(d: Complex) -> Dict[str, Any]:
    return {"n": d.n, "maximal_faces": [list(members_of(m)) for m in d.maximal_faces]}


def complex_from_dict(data: Dict[str, Any]) -> Complex:
    try:
        return Complex.from_faces(int(data["n"]), data["maximal_faces"])
    except (KeyError, TypeError) as e:
        raise PreconditionError(f"malformed complex {data!r}: {e}") from e


def cone_to_dict(c: PolygonCone) -> Dict[str, Any]:
    return {"n": c.n, "partition": c.partition.as_lists()}


def cone_from_dict(data: Dict[str, Any]) -> PolygonCone:
    n = int(data["n"])
    return PolygonCone(n, Partition.of(n, data["partition"]))


def bunch_to_list(phi: Bunch) -> List[List[List[int]]]:
    return [p.as_lists() for p in phi.members]


def bunch_from_list(n: int, data: Iterable[Iterable[Iterable[int]]]) -> Bunch:
    return Bunch.of(n, (Partition.of(n, parts) for parts in data))


def record_to_dict(record: ResolutionRecord) -> Dict[str, Any]:
    return {
        "complex": complex_to_dict(record.complex),
        "kind": record.kind.value,
        "witness": encode_vector(record.witness),
    }


def record_from_dict(data: Dict[str, Any]) -> ResolutionRecord:
    try:
        return ResolutionRecord(
            complex=complex_from_dict(data["complex"]),
            kind=ResolutionKind(data["kind"]),
            witness=decode_vector(data.get("witness")),
        )
    except PreconditionError:
        raise
    except KeyError as e:
        raise PreconditionError(f"record is missing the field {e}") from e
    except (TypeError, ValueError) as e:
        raise PreconditionError(f"malformed record: {e}") from e


def arrangement_to_dict(a: Arrangement) -> Dict[str, Any]:
    return {"dim": a.dim, "normals": [list(v) for v in a.normals]}


def arrangement_from_dict(data: Dict[str, Any]) -> Arrangement:
    try:
        dim = int(data["dim"])
        normals = [[parse_rational(str(v)) for v in row] for row in data["normals"]]
    except (KeyError, TypeError, ValueError) as e:
        raise PreconditionError(f"malformed arrangement {data!r}: {e}") from e
    return Arrangement.of(dim, normals)


# Files

def dump_line(obj: Any) -> str:
    """ One compact JSON line with a stable key order. """
    return json.dumps(obj, separators=(",", ":"))


def save_records(path: str, records: Iterable[ResolutionRecord]) -> int:
    """ Writes one JSON object per line and returns how many were written. """
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(dump_line(record_to_dict(record)) + "\n")
            count += 1
    logger.info("saved %d records to %s", count, path)
    return count


def iter_records(path: str) -> Iterator[ResolutionRecord]:
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as e:
                raise PreconditionError(f"{path}:{number}: not a JSON record ({e.msg})") from e
            try:
                record = record_from_dict(data)
            except PreconditionError as e:
                raise PreconditionError(f"{path}:{number}: {e}") from e
            yield record


def load_records(path: str) -> List[ResolutionRecord]:
    return list(iter_records(path))


def save_arrangement(path: str, a: Arrangement) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(arrangement_to_dict(a), f, indent=4)


def load_arrangement(path: str) -> Arrangement:
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise PreconditionError(f"{path}: not a JSON arrangement ({e.msg})") from e
    return arrangement_from_dict(data)
