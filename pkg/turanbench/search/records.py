"""
The results database.

Records are stored as JSON lines, one :class:`ExtremalRecord` per line,
optionally with the manifest of the run that produced it. Appending a record
whose key is already present verifies it against the stored one instead of
overwriting it.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from turanbench.config import get_settings
from turanbench.errors import (
    CorruptRecord,
    Counterexample,
    UnsupportedBound,
)
from turanbench.search.bounds import closed_form_upper, construction_value
from turanbench.search.extremal import ExtremalRecord

__all__ = ("ResultsDB", "ReportTable", "REPORT_COLUMNS", "report_table")

log = logging.getLogger(__name__)

REPORT_COLUMNS = (
    "n",
    "forbidden",
    "method",
    "objective",
    "value",
    "construction",
    "upper_bound",
    "slack",
)


def _decode(line: str, line_no: int) -> ExtremalRecord:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise CorruptRecord(line_no, f"invalid JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise CorruptRecord(line_no, "row is not an object")
    try:
        return ExtremalRecord.from_dict(data.get("record", data))
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptRecord(line_no, f"bad record: {e!r}") from None


class ResultsDB:
    """
    A JSON lines file of extremal records.

    :param path: Defaults to the configured ``db_path``.
    """

    def __init__(self, path: Optional[Union[str, Path]] = None):
        self.path = Path(path or get_settings().db_path)

    def load(self) -> Tuple[List[ExtremalRecord], int]:
        """
        Returns every decodable record and the number of rows skipped.
        """
        records, skipped = [], 0
        if not self.path.exists():
            return records, skipped
        text = self.path.read_text(encoding="utf-8")
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                records.append(_decode(line, line_no))
            except CorruptRecord as e:
                log.warning("skipping row of %s: %s", self.path, e.error_msg)
                skipped += 1
        return records, skipped

    def append(
        self, record: ExtremalRecord, *, manifest: Optional[dict] = None
    ) -> bool:
        """
        Stores `record` unless an equal one is already present.

        Local-search records with a different seed or budget are new
        evidence and are stored alongside the old ones.

        :returns: True if a row was written.
        :raises Counterexample: An exhaustive record, or a local-search
                                record with the same seed and budget,
                                disagrees with the stored value.
        """
        records, _ = self.load()
        for existing in records:
            if existing.key != record.key:
                continue
            same_run = record.method == "exhaustive" or (
                existing.seed == record.seed
                and existing.budget == record.budget
            )
            if not same_run:
                continue
            if existing.value != record.value:
                raise Counterexample(
                    "results_db:append",
                    record.witness,
                    f"stored value {existing.value} for {record.key},"
                    f" recomputed {record.value}",
                )
            log.info("record %s already stored, verified", record.key)
            return False

        row = {"record": record.to_dict()}
        if manifest is not None:
            row["manifest"] = manifest
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as out:
            out.write(json.dumps(row, sort_keys=True) + "\n")
        return True

    def export_csv(self, path: Union[str, Path]) -> "ReportTable":
        """
        Writes :func:`report_table` of this database to `path` as CSV.
        """
        table = report_table(self)
        Path(path).write_text(table.to_csv(), encoding="utf-8")
        return table


@dataclass
class ReportTable:
    columns: Tuple[str, ...] = REPORT_COLUMNS
    rows: List[Dict[str, object]] = field(default_factory=list)
    #: Rows of the database that could not be decoded.
    warnings: int = 0

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(
            out, fieldnames=list(self.columns), lineterminator="\n"
        )
        writer.writeheader()
        for row in self.rows:
            writer.writerow(
                {k: "" if v is None else v for k, v in row.items()}
            )
        return out.getvalue()

    def as_dict(self) -> dict:
        return {
            "columns": list(self.columns),
            "rows": self.rows,
            "warnings": self.warnings,
        }


def _check_monotone(records: List[ExtremalRecord]):
    # Adding an isolated vertex never loses a triangle or an edge.
    exact: Dict[tuple, List[ExtremalRecord]] = {}
    for record in records:
        if record.method == "exhaustive":
            exact.setdefault(
                (record.forbidden, record.objective), []
            ).append(record)
    for series in exact.values():
        series.sort(key=lambda r: r.n)
        for smaller, larger in zip(series, series[1:]):
            if smaller.value > larger.value:
                raise Counterexample(
                    "report:monotone",
                    larger.witness,
                    f"ex at n={smaller.n} is {smaller.value}, at"
                    f" n={larger.n} only {larger.value}",
                )


def _row(record: ExtremalRecord) -> Dict[str, object]:
    construction = upper = slack = None
    if record.objective == "triangles":
        try:
            construction = construction_value(record.n, record.forbidden)
            upper = closed_form_upper(record.n, record.forbidden)
        except UnsupportedBound:
            pass
    if upper is not None:
        slack = str(upper - record.value)
        upper = str(upper)
    return {
        "n": record.n,
        "forbidden": ",".join(record.forbidden),
        "method": record.method,
        "objective": record.objective,
        "value": record.value,
        "construction": construction,
        "upper_bound": upper,
        "slack": slack,
    }


def report_table(db: ResultsDB) -> ReportTable:
    """
    One row per stored key, sorted by forbidden set, objective, n and
    method. Of several local-search records for one key the best is kept.

    :raises Counterexample: Exhaustive values decrease as n grows.
    """
    records, skipped = db.load()
    best: Dict[tuple, ExtremalRecord] = {}
    for record in records:
        current = best.get(record.key)
        if current is None or record.value > current.value:
            best[record.key] = record
    chosen = sorted(
        best.values(),
        key=lambda r: (r.forbidden, r.objective, r.n, r.method),
    )
    _check_monotone(chosen)
    if skipped:
        log.warning("%d corrupt rows skipped", skipped)
    return ReportTable(rows=[_row(r) for r in chosen], warnings=skipped)
