r"""Toolbox/SFM lexicon parsing and serialization.

SFM files are line-oriented ``\marker value`` records:

.. code-block:: text

    \lx kitab
    \ps n
    \ge book
    \xv kitab oku
    \xe read a book

    \lx do
    \ps v
    \sn 1
    \ge give
    \sn 2
    \ge allow

Records split at ``\lx``. The recognized markers are an MDF-style subset:

    lx headword        hm homonym number    ps part of speech
    sn new sense       ge sense gloss       de definition
    sd semantic domain xv example text      xe example translation
    va variant         sf/pc media file     dt date stamp (dropped)

Everything else is preserved verbatim, in order, in the entry's ``extras``,
so unknown markers survive a parse/serialize round trip. Lines that do not
start with a backslash continue the previous field (joined with one space),
matching common Toolbox exports. A second ``\ps`` or ``\hm`` in a record is
also routed to ``extras`` rather than dropped.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from datetime import datetime

from ..errors import ContentBeforeFirstRecord, EmptyInput
from ..model import LexicalEntry, Sense, new_id, now_utc

SENSE_MARKERS = ("sn", "ge", "de", "sd", "xv", "xe")
ENTRY_MARKERS = ("lx", "hm", "ps", "va")
MEDIA_MARKERS = ("sf", "pc")


@dataclass
class ParseWarning:
    line: int
    column: int
    message: str

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


@dataclass
class _Field:
    marker: str
    value: str
    line: int


def _split_marker_line(line: str) -> tuple[str, str]:
    body = line[1:]
    if " " in body:
        marker, value = body.split(" ", 1)
    else:
        marker, value = body, ""
    return marker.strip().lower(), value.strip()


def _scan_fields(text: str) -> list[list[_Field]]:
    """Split source text into per-record field lists (records begin at \\lx)."""
    records: list[list[_Field]] = []
    current: list[_Field] | None = None
    seen_any = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        seen_any = True
        if line.startswith("\\"):
            marker, value = _split_marker_line(line)
            if marker == "lx":
                current = [_Field("lx", value, lineno)]
                records.append(current)
                continue
            if current is None:
                raise ContentBeforeFirstRecord(
                    f"marker \\{marker} appears before the first \\lx", line=lineno
                )
            current.append(_Field(marker, value, lineno))
        else:
            if current is None:
                raise ContentBeforeFirstRecord(
                    "text appears before the first \\lx", line=lineno
                )
            last = current[-1]
            last.value = f"{last.value} {line.strip()}" if last.value else line.strip()
    if not seen_any:
        raise EmptyInput("no content")
    return records


def _well_formed_date(value: str) -> bool:
    for fmt in ("%d/%b/%Y", "%Y-%m-%d"):
        try:
            datetime.strptime(value, fmt)
            return True
        except ValueError:
            continue
    return False


def _build_entry(fields: list[_Field], project_id: str,
                 warnings: list[ParseWarning]) -> LexicalEntry:
    headword = fields[0].value
    if not headword:
        warnings.append(ParseWarning(fields[0].line, 1, "record has an empty headword"))
    homonym_no: int | None = None
    pos: str | None = None
    variants: list[str] = []
    extras: list[tuple[str, str]] = []
    senses: list[Sense] = []

    def sense(open_new: bool = False) -> Sense:
        if open_new or not senses:
            senses.append(Sense(sense_no=len(senses) + 1))
        return senses[-1]

    for f in fields[1:]:
        if f.marker == "hm":
            if homonym_no is None and f.value.isdigit():
                homonym_no = int(f.value)
            elif homonym_no is None:
                warnings.append(ParseWarning(f.line, 1, f"\\hm value {f.value!r} is not a number"))
                homonym_no = 1
            else:
                extras.append((f.marker, f.value))
        elif f.marker == "ps":
            if pos is None:
                pos = f.value
            else:
                extras.append((f.marker, f.value))
        elif f.marker == "sn":
            sense(open_new=True)
        elif f.marker == "ge":
            s = sense()
            if s.gloss:
                s = sense(open_new=True)
            s.gloss = f.value
        elif f.marker == "de":
            if f.value:
                s = sense()
                s.definition = f.value if s.definition is None else f"{s.definition} {f.value}"
        elif f.marker == "sd":
            if f.value:
                s = sense()
                s.semantic_domain = (
                    f.value if s.semantic_domain is None else f"{s.semantic_domain} {f.value}"
                )
        elif f.marker == "xv":
            if f.value:
                sense().examples.append((f.value, ""))
        elif f.marker == "xe":
            if f.value:
                s = sense()
                if s.examples and not s.examples[-1][1]:
                    s.examples[-1] = (s.examples[-1][0], f.value)
                else:
                    warnings.append(ParseWarning(f.line, 1, "\\xe without a preceding \\xv"))
                    s.examples.append(("", f.value))
        elif f.marker == "va":
            if f.value:
                variants.append(f.value)
        elif f.marker in MEDIA_MARKERS:
            extras.append((f.marker, f.value))
        elif f.marker == "dt":
            if not _well_formed_date(f.value):
                warnings.append(ParseWarning(f.line, 1, f"malformed \\dt value {f.value!r}"))
        else:
            extras.append((f.marker, f.value))

    if pos is None:
        warnings.append(ParseWarning(fields[0].line, 1, "record has no \\ps"))
    if not any(s.gloss or s.definition for s in senses):
        warnings.append(ParseWarning(fields[0].line, 1, "record has no \\ge or \\de"))
    if not senses:
        senses.append(Sense(sense_no=1))
    now = now_utc()
    return LexicalEntry(
        id=new_id(),
        project_id=project_id,
        headword=headword,
        homonym_no=homonym_no if homonym_no is not None else 1,
        pos=pos or "",
        senses=senses,
        variants=variants,
        extras=extras,
        created_at=now,
        modified_at=now,
    )


def parse_sfm_lexicon(text: str, project_id: str = "") -> tuple[list[LexicalEntry], list[ParseWarning]]:
    """Parse SFM text into lexical entries plus warnings.

    Raises ContentBeforeFirstRecord for non-blank content ahead of the first
    ``\\lx`` and EmptyInput for blank input; every other oddity (missing
    \\ps, missing gloss, bad \\hm, dangling \\xe) is a warning.
    """
    text = unicodedata.normalize("NFC", text)
    records = _scan_fields(text)
    if not records:
        raise EmptyInput("no \\lx records found")
    warnings: list[ParseWarning] = []
    entries = [_build_entry(fields, project_id, warnings) for fields in records]
    return entries, warnings


def _emit(lines: list[str], marker: str, value: str, keep_empty: bool = False) -> None:
    # Newlines cannot survive inside a field; edge whitespace never does.
    value = value.replace("\n", " ").strip()
    if value:
        lines.append(f"\\{marker} {value}")
    elif keep_empty:
        lines.append(f"\\{marker}")


def serialize_sfm_lexicon(entries: list[LexicalEntry]) -> str:
    """Serialize entries in canonical marker order: lx, hm, ps, per-sense
    sn/ge/de/sd/xv/xe, va, then extras in stored order. Records are separated
    by one blank line; a single sense omits ``\\sn``."""
    blocks: list[str] = []
    for entry in entries:
        lines: list[str] = [f"\\lx {entry.headword}".rstrip()]
        if entry.homonym_no != 1:
            _emit(lines, "hm", str(entry.homonym_no))
        _emit(lines, "ps", entry.pos)
        multi = len(entry.senses) > 1
        for sense in entry.senses:
            if multi:
                lines.append(f"\\sn {sense.sense_no}")
            _emit(lines, "ge", sense.gloss)
            _emit(lines, "de", sense.definition or "")
            _emit(lines, "sd", sense.semantic_domain or "")
            for vernacular, translation in sense.examples:
                _emit(lines, "xv", vernacular)
                _emit(lines, "xe", translation)
        for variant in entry.variants:
            _emit(lines, "va", variant)
        for marker, value in entry.extras:
            _emit(lines, marker, value, keep_empty=True)
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)
