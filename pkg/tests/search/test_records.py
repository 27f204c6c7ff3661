import json

import pytest

from turanbench.config import configure
from turanbench.errors import Counterexample
from turanbench.search.extremal import ExtremalRecord
from turanbench.search.records import REPORT_COLUMNS, ResultsDB, report_table

P3HAT = ("suspension:path:3",)


def _record(n, value, method="exhaustive", **kwargs):
    return ExtremalRecord(n, P3HAT, value, "C~", 11, method, **kwargs)


def test_append_and_load(tmp_path):
    db = ResultsDB(tmp_path / "results" / "db.jsonl")
    assert db.load() == ([], 0)
    assert db.append(_record(4, 4), manifest={"argv": ["search"]})
    records, skipped = db.load()
    assert records == [_record(4, 4)]
    assert skipped == 0
    row = json.loads(db.path.read_text().splitlines()[0])
    assert row["manifest"] == {"argv": ["search"]}
    assert row["record"]["value"] == 4


def test_default_path(tmp_path):
    configure(db_path=str(tmp_path / "configured.jsonl"))
    assert ResultsDB().path == tmp_path / "configured.jsonl"


def test_duplicate_is_verified(tmp_path):
    db = ResultsDB(tmp_path / "db.jsonl")
    assert db.append(_record(4, 4))
    assert not db.append(_record(4, 4))
    assert len(db.load()[0]) == 1
    with pytest.raises(Counterexample) as exc:
        db.append(_record(4, 3))
    assert exc.value.stage == "results_db:append"


def test_local_search_runs(tmp_path):
    db = ResultsDB(tmp_path / "db.jsonl")
    assert db.append(_record(9, 8, "local-search", seed=1, budget=4))
    assert db.append(_record(9, 9, "local-search", seed=2, budget=4))
    assert not db.append(_record(9, 8, "local-search", seed=1, budget=4))
    with pytest.raises(Counterexample):
        db.append(_record(9, 7, "local-search", seed=1, budget=4))
    table = report_table(db)
    assert [row["value"] for row in table.rows] == [9]


def test_corrupt_rows_are_skipped(tmp_path, caplog):
    db = ResultsDB(tmp_path / "db.jsonl")
    db.append(_record(4, 4))
    with db.path.open("a") as out:
        out.write("{not json\n\n[1, 2]\n")
        out.write(json.dumps({"record": {"n": 5}}) + "\n")
    records, skipped = db.load()
    assert records == [_record(4, 4)]
    assert skipped == 3
    assert "skipping row" in caplog.text
    assert report_table(db).warnings == 3


def test_empty_table(tmp_path):
    table = report_table(ResultsDB(tmp_path / "missing.jsonl"))
    assert table.rows == []
    assert table.to_csv() == ",".join(REPORT_COLUMNS) + "\n"


def test_monotone_violation(tmp_path):
    db = ResultsDB(tmp_path / "db.jsonl")
    db.append(_record(4, 4))
    db.append(_record(5, 3))
    with pytest.raises(Counterexample) as exc:
        report_table(db)
    assert exc.value.stage == "report:monotone"


def test_local_search_is_not_checked_for_monotonicity(tmp_path):
    db = ResultsDB(tmp_path / "db.jsonl")
    db.append(_record(4, 4))
    db.append(_record(5, 2, "local-search", seed=1, budget=1))
    assert len(report_table(db).rows) == 2


def test_export_csv(tmp_path):
    db = ResultsDB(tmp_path / "db.jsonl")
    db.append(_record(5, 4))
    db.append(_record(4, 4))
    db.append(ExtremalRecord(5, ("k3",), 6, "D~{", 34, "exhaustive", "edges"))
    out = tmp_path / "report.csv"
    table = db.export_csv(out)
    assert [(row["forbidden"], row["n"]) for row in table.rows] == [
        ("k3", 5),
        ("suspension:path:3", 4),
        ("suspension:path:3", 5),
    ]
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(REPORT_COLUMNS)
    assert lines[1] == "5,k3,exhaustive,edges,6,,,"
    assert lines[2] == "4,suspension:path:3,exhaustive,triangles,4,4,4,0"
    assert table.as_dict()["warnings"] == 0
