"""Offline linksets: (lemma, pos) → external resource IRIs.

Linking to reference databases is exact-match against a local CSV file
(header ``lemma,pos,target_iri,source``) instead of live queries, which
keeps exports deterministic and the system self-contained. An empty pos
cell makes the row match any part of speech.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from ..errors import CsvShapeError, InvalidIri
from .terms import IRI

HEADER = ["lemma", "pos", "target_iri", "source"]


@dataclass
class LinkSet:
    records: dict[tuple[str, str | None], list[tuple[IRI, str]]] = field(default_factory=dict)

    def lookup(self, lemma: str, pos: str | None) -> list[tuple[IRI, str]]:
        hits: list[tuple[IRI, str]] = []
        if pos is not None:
            hits.extend(self.records.get((lemma, pos), []))
        hits.extend(self.records.get((lemma, None), []))
        return hits

    def __len__(self) -> int:
        return sum(len(v) for v in self.records.values())


def load_linkset(text: str) -> LinkSet:
    reader = csv.reader(io.StringIO(text))
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise CsvShapeError(f"malformed CSV: {exc}", row=max(reader.line_num, 1))
    if not rows or rows[0] != HEADER:
        raise CsvShapeError(f"header must be {','.join(HEADER)}", row=1)
    linkset = LinkSet()
    for idx, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(HEADER):
            raise CsvShapeError(f"expected {len(HEADER)} columns, got {len(row)}", row=idx)
        lemma, pos, target, source = row
        if ":" not in target:
            raise InvalidIri(f"target {target!r} is not an absolute IRI", row=idx)
        key = (lemma.lower(), pos.lower() or None)
        linkset.records.setdefault(key, []).append((IRI(target), source))
    return linkset
