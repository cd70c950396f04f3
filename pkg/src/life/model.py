"""Shared domain types, identifiers and validation rules.

Instances are treated as immutable values: nothing in this package mutates a
domain object after construction, and the store hands every reader a fresh
copy, so they are safe to share between threads. Edits happen by building a
new object and writing a new revision.

``to_doc``/``from_doc`` convert between objects and plain JSON-compatible
dicts. Revisions are store metadata: ``to_doc`` never includes ``rev`` and
``from_doc`` accepts it separately.
"""

from __future__ import annotations

import re
import secrets
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any

from .errors import InvalidName, SchemaViolation

ID_RE = re.compile(r"^[0-9a-f]{32}$")
SLUG_RE = re.compile(r"^[a-z0-9][a-z0-9-]*$")
USERNAME_RE = re.compile(r"^[a-z0-9_]{3,32}$")
LANGUAGE_CODE_RE = re.compile(r"^[a-z]{3}$")
SHA256_RE = re.compile(r"^[0-9a-f]{64}$")


def new_id() -> str:
    """Random 128-bit identifier as 32 lowercase hex chars.

    Random (not sequential) so documents imported or merged from another
    installation cannot collide.
    """
    return secrets.token_hex(16)


def now_utc() -> str:
    """Current UTC time as an RFC 3339 string with second precision."""
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def slugify(name: str) -> str:
    """Lowercase ``name``, collapse non-alphanumeric runs to single hyphens,
    strip edge hyphens. Raises InvalidName when nothing survives."""
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    if not slug:
        raise InvalidName(f"name {name!r} reduces to an empty slug")
    return slug


class Role(str, Enum):
    OWNER = "owner"
    EDITOR = "editor"
    VIEWER = "viewer"


class MediaKind(str, Enum):
    AUDIO = "audio"
    VIDEO = "video"
    IMAGE = "image"


class MorphType(str, Enum):
    PREFIX = "prefix"
    ROOT = "root"
    SUFFIX = "suffix"
    CLITIC = "clitic"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


# --- doc helpers ----------------------------------------------------------

def _expect(doc: Any, path: str) -> dict:
    if not isinstance(doc, dict):
        raise SchemaViolation("expected an object", path=path or "/")
    return doc


def _req(doc: dict, key: str, typ, path: str):
    if key not in doc:
        raise SchemaViolation(f"missing required field {key!r}", path=f"{path}/{key}")
    value = doc[key]
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise SchemaViolation(
            f"field {key!r} has wrong type", path=f"{path}/{key}"
        )
    return value


def _opt(doc: dict, key: str, typ, path: str, default=None):
    if key not in doc or doc[key] is None:
        return default
    return _req(doc, key, typ, path)


def _drop_none(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if v is not None}


# --- domain types ---------------------------------------------------------

@dataclass
class Project:
    id: str
    name: str
    slug: str
    language_name: str = ""
    language_code: str = "und"
    alphabet: list[str] = field(default_factory=list)
    pos_inventory: list[str] = field(default_factory=list)
    members: dict[str, Role] = field(default_factory=dict)
    created_at: str = ""
    rev: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "slug": self.slug,
            "language_name": self.language_name,
            "language_code": self.language_code,
            "alphabet": list(self.alphabet),
            "pos_inventory": list(self.pos_inventory),
            "members": {uid: role.value for uid, role in self.members.items()},
            "created_at": self.created_at,
        }

    @classmethod
    def from_doc(cls, doc: Any, rev: str = "", path: str = "") -> "Project":
        doc = _expect(doc, path)
        members = {}
        for uid, role in _opt(doc, "members", dict, path, {}).items():
            try:
                members[uid] = Role(role)
            except ValueError:
                raise SchemaViolation(f"unknown role {role!r}", path=f"{path}/members/{uid}")
        return cls(
            id=_req(doc, "id", str, path),
            name=_req(doc, "name", str, path),
            slug=_req(doc, "slug", str, path),
            language_name=_opt(doc, "language_name", str, path, ""),
            language_code=_opt(doc, "language_code", str, path, "und"),
            alphabet=list(_opt(doc, "alphabet", list, path, [])),
            pos_inventory=list(_opt(doc, "pos_inventory", list, path, [])),
            members=members,
            created_at=_opt(doc, "created_at", str, path, ""),
            rev=rev,
        )


@dataclass
class User:
    id: str
    username: str
    password_hash: str
    email: str | None = None
    created_at: str = ""
    rev: str = ""

    def to_doc(self) -> dict:
        return _drop_none({
            "id": self.id,
            "username": self.username,
            "password_hash": self.password_hash,
            "email": self.email,
            "created_at": self.created_at,
        })

    @classmethod
    def from_doc(cls, doc: Any, rev: str = "", path: str = "") -> "User":
        doc = _expect(doc, path)
        return cls(
            id=_req(doc, "id", str, path),
            username=_req(doc, "username", str, path),
            password_hash=_req(doc, "password_hash", str, path),
            email=_opt(doc, "email", str, path),
            created_at=_opt(doc, "created_at", str, path, ""),
            rev=rev,
        )


@dataclass
class Sense:
    sense_no: int
    gloss: str = ""
    definition: str | None = None
    semantic_domain: str | None = None
    examples: list[tuple[str, str]] = field(default_factory=list)

    def to_doc(self) -> dict:
        return _drop_none({
            "sense_no": self.sense_no,
            "gloss": self.gloss,
            "definition": self.definition,
            "semantic_domain": self.semantic_domain,
            "examples": [
                {"vernacular": v, "translation": t} for v, t in self.examples
            ],
        })

    @classmethod
    def from_doc(cls, doc: Any, path: str = "") -> "Sense":
        doc = _expect(doc, path)
        examples = []
        for i, ex in enumerate(_opt(doc, "examples", list, path, [])):
            ex = _expect(ex, f"{path}/examples/{i}")
            examples.append((
                _opt(ex, "vernacular", str, f"{path}/examples/{i}", ""),
                _opt(ex, "translation", str, f"{path}/examples/{i}", ""),
            ))
        return cls(
            sense_no=_req(doc, "sense_no", int, path),
            gloss=_opt(doc, "gloss", str, path, ""),
            definition=_opt(doc, "definition", str, path),
            semantic_domain=_opt(doc, "semantic_domain", str, path),
            examples=examples,
        )


@dataclass
class LexicalEntry:
    id: str
    project_id: str
    headword: str
    homonym_no: int = 1
    pos: str = ""
    senses: list[Sense] = field(default_factory=list)
    variants: list[str] = field(default_factory=list)
    media: list[str] = field(default_factory=list)
    # Unknown import markers, kept in insertion order for lossless round-trips.
    extras: list[tuple[str, str]] = field(default_factory=list)
    created_at: str = ""
    modified_at: str = ""
    rev: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "project_id": self.project_id,
            "headword": self.headword,
            "homonym_no": self.homonym_no,
            "pos": self.pos,
            "senses": [s.to_doc() for s in self.senses],
            "variants": list(self.variants),
            "media": list(self.media),
            "extras": [[m, v] for m, v in self.extras],
            "created_at": self.created_at,
            "modified_at": self.modified_at,
        }

    @classmethod
    def from_doc(cls, doc: Any, rev: str = "", path: str = "") -> "LexicalEntry":
        doc = _expect(doc, path)
        senses = [
            Sense.from_doc(s, path=f"{path}/senses/{i}")
            for i, s in enumerate(_req(doc, "senses", list, path))
        ]
        extras = []
        for i, pair in enumerate(_opt(doc, "extras", list, path, [])):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)
            ):
                raise SchemaViolation(
                    "extras items must be [marker, value] string pairs",
                    path=f"{path}/extras/{i}",
                )
            extras.append((pair[0], pair[1]))
        return cls(
            id=_req(doc, "id", str, path),
            project_id=_req(doc, "project_id", str, path),
            headword=_req(doc, "headword", str, path),
            homonym_no=_opt(doc, "homonym_no", int, path, 1),
            pos=_opt(doc, "pos", str, path, ""),
            senses=senses,
            variants=list(_opt(doc, "variants", list, path, [])),
            media=list(_opt(doc, "media", list, path, [])),
            extras=extras,
            created_at=_opt(doc, "created_at", str, path, ""),
            modified_at=_opt(doc, "modified_at", str, path, ""),
            rev=rev,
        )


@dataclass
class MediaAsset:
    id: str
    project_id: str
    kind: MediaKind
    mime: str
    byte_size: int
    sha256: str
    filename: str = ""
    created_at: str = ""
    rev: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "project_id": self.project_id,
            "kind": self.kind.value,
            "mime": self.mime,
            "byte_size": self.byte_size,
            "sha256": self.sha256,
            "filename": self.filename,
            "created_at": self.created_at,
        }

    @classmethod
    def from_doc(cls, doc: Any, rev: str = "", path: str = "") -> "MediaAsset":
        doc = _expect(doc, path)
        kind = _req(doc, "kind", str, path)
        try:
            kind = MediaKind(kind)
        except ValueError:
            raise SchemaViolation(f"unknown media kind {kind!r}", path=f"{path}/kind")
        return cls(
            id=_req(doc, "id", str, path),
            project_id=_req(doc, "project_id", str, path),
            kind=kind,
            mime=_req(doc, "mime", str, path),
            byte_size=_req(doc, "byte_size", int, path),
            sha256=_req(doc, "sha256", str, path),
            filename=_opt(doc, "filename", str, path, ""),
            created_at=_opt(doc, "created_at", str, path, ""),
            rev=rev,
        )


@dataclass
class Morph:
    """A single morph: ``form`` carries no edge hyphens; the position is in
    ``type`` so downstream consumers never re-parse separator marks."""

    form: str
    gloss: str = ""
    type: MorphType = MorphType.ROOT

    def to_doc(self) -> dict:
        return {"form": self.form, "gloss": self.gloss, "type": self.type.value}

    @classmethod
    def from_doc(cls, doc: Any, path: str = "") -> "Morph":
        doc = _expect(doc, path)
        typ = _opt(doc, "type", str, path, "root")
        try:
            typ = MorphType(typ)
        except ValueError:
            raise SchemaViolation(f"unknown morph type {typ!r}", path=f"{path}/type")
        return cls(
            form=_req(doc, "form", str, path),
            gloss=_opt(doc, "gloss", str, path, ""),
            type=typ,
        )


@dataclass
class Word:
    surface: str
    morphs: list[Morph] = field(default_factory=list)
    pos: str | None = None

    def to_doc(self) -> dict:
        return _drop_none({
            "surface": self.surface,
            "morphs": [m.to_doc() for m in self.morphs],
            "pos": self.pos,
        })

    @classmethod
    def from_doc(cls, doc: Any, path: str = "") -> "Word":
        doc = _expect(doc, path)
        return cls(
            surface=_req(doc, "surface", str, path),
            morphs=[
                Morph.from_doc(m, path=f"{path}/morphs/{i}")
                for i, m in enumerate(_opt(doc, "morphs", list, path, []))
            ],
            pos=_opt(doc, "pos", str, path),
        )


@dataclass
class Utterance:
    id: str
    phrase: str
    words: list[Word] = field(default_factory=list)
    translation: tuple[str, str] | None = None  # (text, BCP-47 tag)
    media_ref: tuple[str, int, int] | None = None  # (asset_id, start_ms, end_ms)
    glossed: bool = False

    def to_doc(self) -> dict:
        doc: dict[str, Any] = {
            "id": self.id,
            "phrase": self.phrase,
            "words": [w.to_doc() for w in self.words],
            "glossed": self.glossed,
        }
        if self.translation is not None:
            doc["translation"] = {"text": self.translation[0], "lang": self.translation[1]}
        if self.media_ref is not None:
            doc["media_ref"] = {
                "asset_id": self.media_ref[0],
                "start_ms": self.media_ref[1],
                "end_ms": self.media_ref[2],
            }
        return doc

    @classmethod
    def from_doc(cls, doc: Any, path: str = "") -> "Utterance":
        doc = _expect(doc, path)
        translation = None
        if doc.get("translation") is not None:
            t = _expect(doc["translation"], f"{path}/translation")
            translation = (
                _req(t, "text", str, f"{path}/translation"),
                _opt(t, "lang", str, f"{path}/translation", "en"),
            )
        media_ref = None
        if doc.get("media_ref") is not None:
            m = _expect(doc["media_ref"], f"{path}/media_ref")
            media_ref = (
                _req(m, "asset_id", str, f"{path}/media_ref"),
                _req(m, "start_ms", int, f"{path}/media_ref"),
                _req(m, "end_ms", int, f"{path}/media_ref"),
            )
        return cls(
            id=_req(doc, "id", str, path),
            phrase=_req(doc, "phrase", str, path),
            words=[
                Word.from_doc(w, path=f"{path}/words/{i}")
                for i, w in enumerate(_opt(doc, "words", list, path, []))
            ],
            translation=translation,
            media_ref=media_ref,
            glossed=_opt(doc, "glossed", bool, path, False),
        )


@dataclass
class IGTDocument:
    id: str
    project_id: str
    title: str = ""
    utterances: list[Utterance] = field(default_factory=list)
    created_at: str = ""
    modified_at: str = ""
    rev: str = ""

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "project_id": self.project_id,
            "title": self.title,
            "utterances": [u.to_doc() for u in self.utterances],
            "created_at": self.created_at,
            "modified_at": self.modified_at,
        }

    @classmethod
    def from_doc(cls, doc: Any, rev: str = "", path: str = "") -> "IGTDocument":
        doc = _expect(doc, path)
        return cls(
            id=_req(doc, "id", str, path),
            project_id=_req(doc, "project_id", str, path),
            title=_opt(doc, "title", str, path, ""),
            utterances=[
                Utterance.from_doc(u, path=f"{path}/utterances/{i}")
                for i, u in enumerate(_opt(doc, "utterances", list, path, []))
            ],
            created_at=_opt(doc, "created_at", str, path, ""),
            modified_at=_opt(doc, "modified_at", str, path, ""),
            rev=rev,
        )


# --- validation -----------------------------------------------------------

@dataclass
class Issue:
    severity: Severity
    path: str
    message: str

    def to_doc(self) -> dict:
        return {"severity": self.severity.value, "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(i.severity is Severity.ERROR for i in self.issues)

    def error(self, path: str, message: str) -> None:
        self.issues.append(Issue(Severity.ERROR, path, message))

    def warning(self, path: str, message: str) -> None:
        self.issues.append(Issue(Severity.WARNING, path, message))

    def to_doc(self) -> dict:
        return {"ok": self.ok, "issues": [i.to_doc() for i in self.issues]}


def _normalize_ws(s: str) -> str:
    return " ".join(s.split())


def validate_entry(entry: LexicalEntry, project: Project) -> ValidationReport:
    """Check LexicalEntry/Sense invariants. All problems are reported in-band;
    an unknown part of speech is a warning, everything else an error.

    Uniqueness of (headword, homonym_no) needs the sibling entries and is
    enforced at write time by the service, not here.
    """
    report = ValidationReport()
    if not entry.headword:
        report.error("headword", "headword must be non-empty")
    if entry.homonym_no < 1:
        report.error("homonym_no", "homonym number must be >= 1")
    if not entry.senses:
        report.error("senses", "entry must have at least one sense")
    for i, sense in enumerate(entry.senses):
        if sense.sense_no != i + 1:
            report.error(
                f"senses/{i}/sense_no",
                f"sense numbers must run 1..n; expected {i + 1}, got {sense.sense_no}",
            )
        if not sense.gloss and not sense.definition:
            report.error(f"senses/{i}", "sense needs a gloss or a definition")
    if entry.pos and entry.pos not in project.pos_inventory:
        report.warning("pos", f"part of speech {entry.pos!r} is not in the project inventory")
    return report


def validate_utterance(utt: Utterance) -> ValidationReport:
    """Check Utterance/Word/Morph invariants, including that word surfaces
    rejoin to the phrase under whitespace normalization."""
    report = ValidationReport()
    if not utt.phrase.strip():
        report.error("phrase", "phrase must be non-empty")
    for i, word in enumerate(utt.words):
        if not word.surface:
            report.error(f"words/{i}/surface", "word surface must be non-empty")
        for j, morph in enumerate(word.morphs):
            mpath = f"words/{i}/morphs/{j}"
            form = morph.form.strip("-=")
            if not form:
                report.error(f"{mpath}/form", "morph form is empty after stripping separators")
            elif morph.form != form:
                report.error(
                    f"{mpath}/form",
                    "morph form must not carry edge separators; position belongs in type",
                )
            if any(c.isspace() for c in morph.form):
                report.error(f"{mpath}/form", "morph form must not contain whitespace")
            if utt.glossed and not morph.gloss:
                report.error(f"{mpath}/gloss", "glossed utterance has a morph without a gloss")
        if utt.glossed and not word.morphs:
            report.error(f"words/{i}/morphs", "glossed utterance has an unanalyzed word")
    joined = _normalize_ws(" ".join(w.surface for w in utt.words))
    if joined != _normalize_ws(utt.phrase):
        report.error("words", "word surfaces do not rejoin to the phrase")
    if utt.media_ref is not None:
        _, start_ms, end_ms = utt.media_ref
        if start_ms < 0:
            report.error("media_ref", "start_ms must be >= 0")
        if end_ms <= start_ms:
            report.error("media_ref", "end_ms must be greater than start_ms")
    return report


def validate_project(project: Project) -> ValidationReport:
    report = ValidationReport()
    if not project.name:
        report.error("name", "project name must be non-empty")
    if not SLUG_RE.match(project.slug):
        report.error("slug", f"slug {project.slug!r} is not lowercase-alphanumeric-hyphen")
    if not LANGUAGE_CODE_RE.match(project.language_code):
        report.error("language_code", "language code must be three lowercase letters")
    seen: set[str] = set()
    for i, unit in enumerate(project.alphabet):
        if not unit:
            report.error(f"alphabet/{i}", "alphabet units must be non-empty")
        elif unit in seen:
            report.error(f"alphabet/{i}", f"alphabet unit {unit!r} occurs twice")
        seen.add(unit)
    if Role.OWNER not in project.members.values():
        report.error("members", "project must have at least one owner")
    return report
