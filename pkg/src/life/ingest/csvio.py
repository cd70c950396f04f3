"""Lexicon CSV interchange, RFC 4180 quoting, one row per sense.

Columns: headword, homonym_no, pos, sense_no, gloss, definition,
semantic_domain. Import groups consecutive rows by (headword, homonym_no);
sense numbers are reassigned sequentially within each group.
"""

from __future__ import annotations

import csv
import io
import unicodedata

from ..errors import CsvShapeError
from ..model import LexicalEntry, Sense, new_id, now_utc

COLUMNS = ["headword", "homonym_no", "pos", "sense_no", "gloss", "definition", "semantic_domain"]


def export_csv(entries: list[LexicalEntry]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(COLUMNS)
    for entry in entries:
        for sense in entry.senses:
            writer.writerow([
                entry.headword,
                entry.homonym_no,
                entry.pos,
                sense.sense_no,
                sense.gloss,
                sense.definition or "",
                sense.semantic_domain or "",
            ])
    return out.getvalue()


def _int_cell(value: str, name: str, row: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise CsvShapeError(f"column {name!r} must be an integer, got {value!r}", row=row)


def import_csv(text: str, project_id: str = "") -> list[LexicalEntry]:
    """Parse lexicon CSV. Raises CsvShapeError with the 1-based row number
    (the header is row 1) for a wrong column count, a bad header, or a
    non-numeric count cell."""
    text = unicodedata.normalize("NFC", text)
    reader = csv.reader(io.StringIO(text))
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise CsvShapeError(f"malformed CSV: {exc}", row=max(reader.line_num, 1))
    if not rows:
        raise CsvShapeError("input has no header row", row=1)
    if rows[0] != COLUMNS:
        raise CsvShapeError(
            f"header must be {','.join(COLUMNS)}", row=1
        )
    entries: list[LexicalEntry] = []
    current: LexicalEntry | None = None
    now = now_utc()
    for idx, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(COLUMNS):
            raise CsvShapeError(
                f"expected {len(COLUMNS)} columns, got {len(row)}", row=idx
            )
        headword, homonym_raw, pos, _, gloss, definition, semantic_domain = row
        homonym_no = _int_cell(homonym_raw, "homonym_no", idx)
        if (
            current is None
            or current.headword != headword
            or current.homonym_no != homonym_no
        ):
            current = LexicalEntry(
                id=new_id(),
                project_id=project_id,
                headword=headword,
                homonym_no=homonym_no,
                pos=pos,
                senses=[],
                created_at=now,
                modified_at=now,
            )
            entries.append(current)
        current.senses.append(Sense(
            sense_no=len(current.senses) + 1,
            gloss=gloss,
            definition=definition or None,
            semantic_domain=semantic_domain or None,
        ))
    return entries
