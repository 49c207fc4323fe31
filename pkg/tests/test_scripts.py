import sys

import pytest

import enumerator
import reporter
from crepant.domain.hyper_cones import census
from crepant.persistence.json_io import save_records

def test_report_of_a_census_file(tmp_path, monkeypatch, capsys):
    path = str(tmp_path / "census5.ndjson")
    save_records(path, census(5))
    monkeypatch.setattr(sys, "argv", ["reporter.py", path])

    reporter.main()

    out = capsys.readouterr().out
    assert "CREPANT CENSUS REPORT" in out
    assert "- n: 5" in out
    assert "- Total: 81" in out
    assert "- Non-projective: 0" in out
    assert "- Non-full and projective: 5" in out

def test_missing_file_exits_with_one(tmp_path, monkeypatch):
    monkeypatch.setattr(sys, "argv", ["reporter.py", str(tmp_path / "nothing.ndjson")])
    with pytest.raises(SystemExit) as info:
        reporter.main()
    assert info.value.code == 1

def test_corrupt_record_exits_with_one(tmp_path, monkeypatch, capsys):
    path = tmp_path / "corrupt.ndjson"
    path.write_text('{"complex": {"n": 5, "maximal_faces": [[1, 2]]}, "kind": "flop", "witness": null}\n')
    monkeypatch.setattr(sys, "argv", ["reporter.py", str(path)])
    with pytest.raises(SystemExit) as info:
        reporter.main()
    assert info.value.code == 1
    assert "corrupt.ndjson:1" in capsys.readouterr().out

def test_enumerator_exits_with_the_dispatch_code(monkeypatch, capsys):
    monkeypatch.delenv("CREPANT_WORKERS", raising=False)
    monkeypatch.setattr(sys, "argv", ["enumerator.py", "complexes", "count", "--n", "4"])
    with pytest.raises(SystemExit) as info:
        enumerator.main()
    assert info.value.code == 0
    assert '"count": 12' in capsys.readouterr().out
