"""CSV ingestion and the bundled Appendix I dataset.

CSV schema (header names are exact, column order is free)::

    unit_id,pub_id,year,doc_type,citations,self_citations,jcs,fcs

``year``, ``self_citations`` and ``fcs`` may be left empty. Decimal separator
is ``.`` only. Any bad row aborts the whole load; the raised exception
carries the 1-based data row number in its ``row`` attribute.
"""
from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Mapping, Optional, Union

from .errors import BadNumber, CitenormError, MissingColumn
from .model import DocType, EvaluationSet, PublicationRecord

COLUMNS = ("unit_id", "pub_id", "year", "doc_type", "citations",
           "self_citations", "jcs", "fcs")

APPENDIX_UNIT_ID = "appendix"

# (citations, JCS, printed C/JCS) exactly as published, rows 1..65.
APPENDIX_ROWS = (
    (55, "58.31", "0.94"),
    (46, "18.46", "2.49"),
    (53, "62.73", "0.84"),
    (39, "48.99", "0.80"),
    (24, "9.98", "2.40"),
    (34, "9.12", "3.73"),
    (25, "20.91", "1.20"),
    (18, "7.52", "2.39"),
    (20, "23.73", "0.84"),
    (1, "1.51", "0.66"),
    (14, "19.74", "0.71"),
    (1, "0.93", "1.07"),
    (24, "17.34", "1.38"),
    (23, "19.10", "1.20"),
    (22, "23.20", "0.95"),
    (18, "45.61", "0.39"),
    (11, "9.98", "1.10"),
    (20, "74.50", "0.27"),
    (3, "1.53", "1.96"),
    (3, "0.61", "4.95"),
    (2, "0.61", "3.30"),
    (17, "65.48", "0.26"),
    (14, "14.32", "0.98"),
    (0, "1.25", "0.00"),
    (6, "7.69", "0.78"),
    (12, "9.98", "1.20"),
    (12, "24.79", "0.48"),
    (16, "19.10", "0.84"),
    (11, "6.41", "1.72"),
    (12, "19.10", "0.63"),
    (1, "0.50", "1.98"),
    (11, "14.32", "0.77"),
    (8, "17.34", "0.46"),
    (10, "7.66", "1.31"),
    (9, "8.01", "1.12"),
    (5, "3.34", "1.50"),
    (9, "14.32", "0.63"),
    (8, "10.16", "0.79"),
    (0, "0.39", "0.00"),
    (1, "3.34", "0.30"),
    (6, "3.34", "1.79"),
    (6, "13.27", "0.45"),
    (1, "3.77", "0.27"),
    (6, "5.61", "1.07"),
    (0, "0.61", "0.00"),
    (0, "0.13", "0.00"),
    (2, "3.34", "0.60"),
    (4, "9.98", "0.40"),
    (5, "23.20", "0.22"),
    (6, "11.54", "0.52"),
    (1, "3.34", "0.30"),
    (4, "7.19", "0.56"),
    (5, "10.30", "0.49"),
    (2, "3.34", "0.60"),
    (6, "17.08", "0.35"),
    (5, "7.06", "0.71"),
    (4, "8.61", "0.46"),
    (2, "23.20", "0.09"),
    (5, "23.67", "0.21"),
    (3, "13.95", "0.22"),
    (2, "8.01", "0.25"),
    (1, "7.06", "0.14"),
    (2, "24.07", "0.08"),
    (1, "18.72", "0.05"),
    (1, "17.34", "0.06"),
)


def _int(text: str, column: str, optional: bool = False) -> Optional[int]:
    text = text.strip()
    if not text:
        if optional:
            return None
        raise BadNumber(f"column {column}: value is required")
    try:
        return int(text)
    except ValueError:
        raise BadNumber(f"column {column}: not an integer: {text!r}") from None


def _float(text: str, column: str, optional: bool = False) -> Optional[float]:
    text = text.strip()
    if not text:
        if optional:
            return None
        raise BadNumber(f"column {column}: value is required")
    try:
        value = float(text)
    except ValueError:
        raise BadNumber(f"column {column}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise BadNumber(f"column {column}: not finite: {text!r}")
    return value


def _row_to_record(row: Mapping[str, str]) -> PublicationRecord:
    doc_text = row["doc_type"].strip()
    return PublicationRecord(
        id=row["pub_id"],
        year=_int(row["year"], "year", optional=True),
        doc_type=DocType.parse(doc_text) if doc_text else DocType.OTHER,
        citations=_int(row["citations"], "citations"),
        self_citations=_int(row["self_citations"], "self_citations", optional=True),
        jcs=_float(row["jcs"], "jcs"),
        fcs=_float(row["fcs"], "fcs", optional=True),
    )


def parse_csv(text: str) -> dict:
    """Parse CSV text into ``{unit_id: EvaluationSet}``.

    Units appear in order of first occurrence; record order within a unit
    follows the file.
    """
    if text.startswith("\ufeff"):
        text = text[1:]
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = reader.fieldnames or []
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise MissingColumn(f"missing column(s): {', '.join(missing)}")

    grouped: dict = {}
    for n, row in enumerate(reader, start=1):
        if None in row.values():
            exc = BadNumber(f"row {n}: expected {len(header)} fields")
            exc.row = n
            raise exc
        try:
            record = _row_to_record(row)
        except CitenormError as err:
            exc = type(err)(f"row {n}: {err}")
            exc.row = n
            raise exc from err
        grouped.setdefault(row["unit_id"], []).append(record)
    return {unit: EvaluationSet(unit, records) for unit, records in grouped.items()}


def read_csv(path) -> dict:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_csv(fh.read())


def _fmt(value, float_format: Optional[str]) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return float_format.format(value) if float_format else repr(value)
    return str(value)


def serialize_csv(sets: Union[Mapping[str, EvaluationSet], Iterable[EvaluationSet]],
                  float_format: Optional[str] = None) -> str:
    """Write evaluation sets in the ingest schema (LF line endings).

    Floats are written with ``repr`` unless ``float_format`` (e.g.
    ``"{:.2f}"``) is given, so the default output round-trips exactly.
    """
    if isinstance(sets, Mapping):
        sets = sets.values()
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for es in sets:
        for r in es.records:
            writer.writerow([
                es.unit_id, r.id, _fmt(r.year, None), r.doc_type.value,
                r.citations, _fmt(r.self_citations, None),
                _fmt(float(r.jcs), float_format),
                _fmt(None if r.fcs is None else float(r.fcs), float_format),
            ])
    return out.getvalue()


def load_appendix_fixture() -> EvaluationSet:
    """The 65 publications of the evaluated principal investigator.

    No document types, self-citations or field rates were published; every
    record is an Article with only citations and JCS set.
    """
    records = tuple(
        PublicationRecord(id=str(i), citations=c, jcs=float(jcs), doc_type=DocType.ARTICLE)
        for i, (c, jcs, _) in enumerate(APPENDIX_ROWS, start=1)
    )
    return EvaluationSet(APPENDIX_UNIT_ID, records)


def appendix_printed_ratios() -> list:
    """The C/JCS column as printed, for comparison with recomputed ratios."""
    return [float(ratio) for _, _, ratio in APPENDIX_ROWS]


def appendix_csv() -> str:
    """The fixture in the ingest schema, decimals exactly as printed."""
    lines = [",".join(COLUMNS)]
    for i, (c, jcs, _) in enumerate(APPENDIX_ROWS, start=1):
        lines.append(f"{APPENDIX_UNIT_ID},{i},,{DocType.ARTICLE.value},{c},,{jcs},")
    return "\n".join(lines) + "\n"
