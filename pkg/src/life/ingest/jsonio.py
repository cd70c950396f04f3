"""Canonical JSON project bundles.

The bundle is a single document::

    {"format_version": 1, "ids": "file-local",
     "project": {...}, "entries": [...], "texts": [...], "assets": [...]}

``ids: "file-local"`` records the identifier policy: ids in the file are
consistent references within the file only. Importing into an existing
project regenerates every id (keeping cross-references intact) so bundles
can move between installations without collisions; revisions are never
exported and are always assigned by the receiving store.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .. import canonical
from ..errors import SchemaViolation
from ..model import IGTDocument, LexicalEntry, MediaAsset, Project, new_id

FORMAT_VERSION = 1


@dataclass
class ProjectBundle:
    project: Project
    entries: list[LexicalEntry] = field(default_factory=list)
    texts: list[IGTDocument] = field(default_factory=list)
    assets: list[MediaAsset] = field(default_factory=list)


def export_json(bundle: ProjectBundle) -> bytes:
    doc = {
        "format_version": FORMAT_VERSION,
        "ids": "file-local",
        "project": bundle.project.to_doc(),
        "entries": [e.to_doc() for e in bundle.entries],
        "texts": [t.to_doc() for t in bundle.texts],
        "assets": [a.to_doc() for a in bundle.assets],
    }
    return canonical.encode(doc)


def import_json(data: bytes | str, regenerate_ids: bool = False) -> ProjectBundle:
    """Parse and validate a bundle; raises SchemaViolation with a JSON
    pointer to the offending value. With ``regenerate_ids`` every id is
    replaced by a fresh one and all references are remapped."""
    try:
        doc: Any = canonical.decode(data)
    except ValueError as exc:
        raise SchemaViolation(f"not valid JSON: {exc}", path="/")
    if not isinstance(doc, dict):
        raise SchemaViolation("bundle must be a JSON object", path="/")
    if doc.get("format_version") != FORMAT_VERSION:
        raise SchemaViolation(
            f"unsupported format_version {doc.get('format_version')!r}",
            path="/format_version",
        )
    if "project" not in doc:
        raise SchemaViolation("missing required field 'project'", path="/project")
    project = Project.from_doc(doc["project"], path="/project")

    def _items(key: str) -> list:
        value = doc.get(key, [])
        if not isinstance(value, list):
            raise SchemaViolation(f"{key!r} must be an array", path=f"/{key}")
        return value

    entries = [
        LexicalEntry.from_doc(e, path=f"/entries/{i}") for i, e in enumerate(_items("entries"))
    ]
    texts = [
        IGTDocument.from_doc(t, path=f"/texts/{i}") for i, t in enumerate(_items("texts"))
    ]
    assets = [
        MediaAsset.from_doc(a, path=f"/assets/{i}") for i, a in enumerate(_items("assets"))
    ]
    bundle = ProjectBundle(project=project, entries=entries, texts=texts, assets=assets)
    if regenerate_ids:
        bundle = remap_ids(bundle)
    return bundle


def remap_ids(bundle: ProjectBundle, project_id: str | None = None) -> ProjectBundle:
    """Give every object a fresh id, rewriting references (entry/text/asset
    project ids, entry media lists, utterance media anchors)."""
    id_map: dict[str, str] = {bundle.project.id: project_id or new_id()}

    def fresh(old: str) -> str:
        if old not in id_map:
            id_map[old] = new_id()
        return id_map[old]

    project = Project.from_doc(bundle.project.to_doc())
    project.id = fresh(bundle.project.id)
    assets = []
    for asset in bundle.assets:
        a = MediaAsset.from_doc(asset.to_doc())
        a.id = fresh(asset.id)
        a.project_id = project.id
        assets.append(a)
    entries = []
    for entry in bundle.entries:
        e = LexicalEntry.from_doc(entry.to_doc())
        e.id = fresh(entry.id)
        e.project_id = project.id
        e.media = [fresh(m) for m in entry.media]
        entries.append(e)
    texts = []
    for text in bundle.texts:
        t = IGTDocument.from_doc(text.to_doc())
        t.id = fresh(text.id)
        t.project_id = project.id
        for utt in t.utterances:
            utt.id = fresh(utt.id)
            if utt.media_ref is not None:
                asset_id, start_ms, end_ms = utt.media_ref
                utt.media_ref = (fresh(asset_id), start_ms, end_ms)
        texts.append(t)
    return ProjectBundle(project=project, entries=entries, texts=texts, assets=assets)
