import json
from fractions import Fraction

import pytest

from crepant.domain.arrangements import Arrangement
from crepant.domain.errors import PreconditionError
from crepant.domain.hyper_cones import census
from crepant.persistence.json_io import (
    arrangement_from_dict, complex_from_dict, complex_to_dict, decode_vector, encode_vector, load_arrangement,
    load_records, record_from_dict, save_arrangement, save_records,
)

def test_vectors_are_exact_strings():
    assert encode_vector((3, Fraction(1, 2), Fraction(-4, 2))) == ["3", "1/2", "-2"]
    assert encode_vector(None) is None
    decoded = decode_vector(["3", "1/2", 7])
    assert decoded == (3, Fraction(1, 2), 7)
    assert type(decoded[0]) is int

def test_complex_layout(small_full_complex):
    data = complex_to_dict(small_full_complex)
    assert data["n"] == 5
    assert len(data["maximal_faces"]) == 10
    assert data["maximal_faces"][0] == [1, 2]
    assert complex_from_dict(data) == small_full_complex

def test_census_file(tmp_path):
    path = str(tmp_path / "census5.ndjson")
    records = list(census(5))
    assert save_records(path, records) == 81
    with open(path, encoding="utf-8") as f:
        first = json.loads(f.readline())
    assert set(first) == {"complex", "kind", "witness"}
    assert load_records(path) == records

def test_arrangement_file(tmp_path):
    path = str(tmp_path / "a.json")
    a = Arrangement.of(3, [(1, 0, 0), (1, 1, 1)])
    save_arrangement(path, a)
    assert load_arrangement(path) == a

def test_arrangement_with_rational_normals():
    a = arrangement_from_dict({"dim": 2, "normals": [["1/2", "1"], [0, 3]]})
    assert (1, 2) in a
    assert (0, 1) in a

@pytest.mark.parametrize(
    "data",
    [
        # Case 1: no kind
        {"complex": {"n": 5, "maximal_faces": [[1, 2]]}, "witness": None},
        # Case 2: no complex
        {"kind": "projective", "witness": ["1", "1", "1", "1", "1"]},
        # Case 3: maximal faces missing
        {"complex": {"n": 5}, "kind": "non-projective"},
        # Case 4: unknown kind
        {"complex": {"n": 5, "maximal_faces": [[1, 2]]}, "kind": "flop", "witness": None},
        # Case 5: witness entries that are not rationals
        {"complex": {"n": 5, "maximal_faces": [[1, 2]]}, "kind": "projective", "witness": ["one"]},
    ]
)
def test_malformed_records(data):
    with pytest.raises(PreconditionError):
        record_from_dict(data)

def test_malformed_files(tmp_path):
    records = tmp_path / "bad.ndjson"
    records.write_text("{not json}\n")
    with pytest.raises(PreconditionError, match="bad.ndjson:1"):
        load_records(str(records))
    arrangement = tmp_path / "bad.json"
    arrangement.write_text("[")
    with pytest.raises(PreconditionError):
        load_arrangement(str(arrangement))
    with pytest.raises(PreconditionError):
        arrangement_from_dict({"normals": [[1, 0]]})
