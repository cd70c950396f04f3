"""Document persistence: named collections of revisioned JSON documents plus
content-addressed blob storage.

Two interchangeable backends: :class:`MemoryStore` for tests and embedding,
and :class:`FileStore`, a single-node backend with an append-only write log
and periodic compaction into a snapshot, so a deployment needs no external
database service.

Documents are canonical JSON bytes (sorted keys, UTF-8); revisions are opaque
``"<counter>-<hash prefix>"`` strings with a per-document monotonic counter.
Revisions are store metadata: documents carry no ``rev`` key internally, and
any ``rev`` key on the way in is stripped. Writes are serialized under one
lock, giving linearizable per-document semantics; readers always receive a
freshly decoded copy they own.

File layout: ``<data_dir>/log``, ``<data_dir>/snapshot``,
``<data_dir>/blobs/<first-2-hex>/<sha256>``.
"""

from __future__ import annotations

import hashlib
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from . import canonical
from .dictionary import collation_key
from .errors import NotFound, StaleRevision, UnknownCollection

# "sessions" backs token persistence/revocation for the service layer.
COLLECTIONS = ("users", "projects", "entries", "texts", "assets", "models", "sessions")

MAX_PAGE_LIMIT = 500


@dataclass
class QueryFilter:
    project_id: str | None = None
    field_equals: list[tuple[str, Any]] = field(default_factory=list)
    headword_prefix: str | None = None
    offset: int = 0
    limit: int = 100

    def __post_init__(self):
        if not 1 <= self.limit <= MAX_PAGE_LIMIT:
            raise ValueError(f"limit must be in [1, {MAX_PAGE_LIMIT}]")
        if self.offset < 0:
            raise ValueError("offset must be >= 0")


@dataclass
class _Stored:
    body: bytes
    rev: str


def _lookup_path(doc: dict, path: str) -> Any:
    value: Any = doc
    for part in path.split("."):
        if not isinstance(value, dict) or part not in value:
            return None
        value = value[part]
    return value


def _encode_doc(doc: dict) -> tuple[str, bytes]:
    if "id" not in doc or not isinstance(doc["id"], str) or not doc["id"]:
        raise ValueError("document must carry a non-empty string 'id'")
    body = canonical.encode({k: v for k, v in doc.items() if k != "rev"})
    return doc["id"], body


def _next_rev(previous: str | None, body: bytes) -> str:
    counter = int(previous.split("-", 1)[0]) + 1 if previous else 1
    return f"{counter}-{hashlib.sha256(body).hexdigest()[:8]}"


class MemoryStore:
    """In-memory backend; also the base implementation for FileStore."""

    def __init__(self):
        self._collections: dict[str, dict[str, _Stored]] = {
            name: {} for name in COLLECTIONS
        }
        self._blobs: dict[str, bytes] = {}
        self._lock = threading.RLock()

    # -- documents ---------------------------------------------------------

    def _collection(self, name: str) -> dict[str, _Stored]:
        try:
            return self._collections[name]
        except KeyError:
            raise UnknownCollection(f"unknown collection {name!r}")

    def put(self, collection: str, doc: dict, expected_rev: str | None = None) -> str:
        with self._lock:
            coll = self._collection(collection)
            doc_id, body = _encode_doc(doc)
            existing = coll.get(doc_id)
            if existing is None:
                if expected_rev is not None:
                    raise StaleRevision(
                        f"document {doc_id} does not exist but a revision was supplied",
                        current_rev=None,
                    )
                rev = _next_rev(None, body)
            else:
                if expected_rev != existing.rev:
                    raise StaleRevision(
                        f"revision mismatch for {doc_id}: expected {existing.rev}",
                        current_rev=existing.rev,
                    )
                rev = _next_rev(existing.rev, body)
            coll[doc_id] = _Stored(body, rev)
            self._log_write("put", collection, doc_id, rev, body)
            return rev

    def get(self, collection: str, doc_id: str) -> tuple[dict, str]:
        with self._lock:
            stored = self._collection(collection).get(doc_id)
            if stored is None:
                raise NotFound(f"{collection}/{doc_id} not found")
            return canonical.decode(stored.body), stored.rev

    def delete(self, collection: str, doc_id: str, expected_rev: str) -> None:
        with self._lock:
            coll = self._collection(collection)
            stored = coll.get(doc_id)
            if stored is None:
                raise NotFound(f"{collection}/{doc_id} not found")
            if expected_rev != stored.rev:
                raise StaleRevision(
                    f"revision mismatch for {doc_id}: expected {stored.rev}",
                    current_rev=stored.rev,
                )
            del coll[doc_id]
            self._log_write("delete", collection, doc_id, stored.rev, None)

    def query(self, collection: str, flt: QueryFilter) -> tuple[list[tuple[dict, str]], int]:
        """Filtered, deterministically ordered page of (document, rev) rows
        plus the total match count ignoring pagination.

        Order is by id ascending; with a headword prefix, by headword under
        the project collation (the filter's project supplies the alphabet).
        """
        with self._lock:
            coll = self._collection(collection)
            rows: list[tuple[dict, str]] = []
            for doc_id in sorted(coll):
                stored = coll[doc_id]
                doc = canonical.decode(stored.body)
                if flt.project_id is not None and doc.get("project_id") != flt.project_id:
                    continue
                if any(_lookup_path(doc, p) != v for p, v in flt.field_equals):
                    continue
                if flt.headword_prefix is not None and not str(
                    doc.get("headword", "")
                ).startswith(flt.headword_prefix):
                    continue
                rows.append((doc, stored.rev))
            if flt.headword_prefix is not None:
                alphabet = self._project_alphabet(flt.project_id)
                rows.sort(
                    key=lambda row: (
                        collation_key(alphabet, str(row[0].get("headword", ""))).sort_key,
                        row[0].get("homonym_no", 1),
                        row[0]["id"],
                    )
                )
            total = len(rows)
            return rows[flt.offset : flt.offset + flt.limit], total

    def _project_alphabet(self, project_id: str | None) -> list[str]:
        if project_id is None:
            return []
        stored = self._collections["projects"].get(project_id)
        if stored is None:
            return []
        alphabet = canonical.decode(stored.body).get("alphabet", [])
        return [u for u in alphabet if isinstance(u, str)]

    # -- blobs ---------------------------------------------------------------

    def put_blob(self, data: bytes) -> str:
        """Content-addressed, idempotent blob write; returns the sha256 hex."""
        if not data:
            raise ValueError("blob must be non-empty")
        digest = hashlib.sha256(data).hexdigest()
        with self._lock:
            if digest not in self._blobs:
                self._blobs[digest] = bytes(data)
                self._write_blob_file(digest, data)
        return digest

    def get_blob(self, digest: str) -> bytes:
        with self._lock:
            try:
                return self._blobs[digest]
            except KeyError:
                raise NotFound(f"blob {digest} not found")

    def has_blob(self, digest: str) -> bool:
        with self._lock:
            return digest in self._blobs

    # -- backend hooks -------------------------------------------------------

    def _log_write(self, op: str, collection: str, doc_id: str, rev: str, body: bytes | None):
        pass

    def _write_blob_file(self, digest: str, data: bytes):
        pass

    def compact(self) -> None:
        pass

    def close(self) -> None:
        pass


class FileStore(MemoryStore):
    """File-backed store: snapshot + append-only log, both canonical JSON.

    Every write is flushed and fsynced before ``put``/``delete`` returns, so
    a process restart replays to the same state. When the log accumulates
    ``compact_every`` records it is folded into the snapshot and truncated.
    """

    def __init__(self, data_dir: str | Path, compact_every: int = 1024):
        super().__init__()
        self._dir = Path(data_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        (self._dir / "blobs").mkdir(exist_ok=True)
        self._compact_every = compact_every
        self._log_path = self._dir / "log"
        self._snapshot_path = self._dir / "snapshot"
        self._log_records = 0
        self._replaying = True
        self._load()
        self._replaying = False
        self._log_file = open(self._log_path, "ab")

    def _load(self) -> None:
        if self._snapshot_path.exists():
            snapshot = canonical.decode(self._snapshot_path.read_bytes())
            for name, docs in snapshot.get("collections", {}).items():
                if name not in self._collections:
                    self._collections[name] = {}
                for doc_id, rec in docs.items():
                    body = canonical.encode(rec["doc"])
                    self._collections[name][doc_id] = _Stored(body, rec["rev"])
        if self._log_path.exists():
            with open(self._log_path, "rb") as fh:
                for raw in fh:
                    if not raw.endswith(b"\n"):
                        break  # torn tail from an interrupted write
                    try:
                        rec = canonical.decode(raw)
                    except ValueError:
                        break
                    self._apply_log_record(rec)
                    self._log_records += 1
        for digest_dir in sorted((self._dir / "blobs").glob("??")):
            for blob_path in sorted(digest_dir.iterdir()):
                self._blobs[blob_path.name] = blob_path.read_bytes()

    def _apply_log_record(self, rec: dict) -> None:
        coll = self._collections.setdefault(rec["collection"], {})
        if rec["op"] == "put":
            coll[rec["id"]] = _Stored(canonical.encode(rec["doc"]), rec["rev"])
        elif rec["op"] == "delete":
            coll.pop(rec["id"], None)

    def _log_write(self, op, collection, doc_id, rev, body):
        if self._replaying:
            return
        rec = {"op": op, "collection": collection, "id": doc_id, "rev": rev}
        if body is not None:
            rec["doc"] = canonical.decode(body)
        self._log_file.write(canonical.encode(rec) + b"\n")
        self._log_file.flush()
        os.fsync(self._log_file.fileno())
        self._log_records += 1
        if self._log_records >= self._compact_every:
            self.compact()

    def _write_blob_file(self, digest: str, data: bytes):
        blob_dir = self._dir / "blobs" / digest[:2]
        blob_dir.mkdir(parents=True, exist_ok=True)
        final = blob_dir / digest
        if final.exists():
            return
        tmp = blob_dir / f".{digest}.tmp"
        tmp.write_bytes(data)
        os.replace(tmp, final)

    def compact(self) -> None:
        """Fold the log into the snapshot and truncate it. Atomic via
        write-to-temp + rename."""
        with self._lock:
            snapshot = {
                "collections": {
                    name: {
                        doc_id: {"rev": s.rev, "doc": canonical.decode(s.body)}
                        for doc_id, s in coll.items()
                    }
                    for name, coll in self._collections.items()
                }
            }
            tmp = self._dir / ".snapshot.tmp"
            with open(tmp, "wb") as fh:
                fh.write(canonical.encode(snapshot))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._snapshot_path)
            self._log_file.close()
            self._log_file = open(self._log_path, "wb")
            self._log_file.flush()
            os.fsync(self._log_file.fileno())
            self._log_records = 0

    def close(self) -> None:
        with self._lock:
            if not self._log_file.closed:
                self._log_file.close()


def iter_documents(store: MemoryStore, collection: str, project_id: str | None = None,
                   page_size: int = MAX_PAGE_LIMIT) -> Iterable[tuple[dict, str]]:
    """Walk every matching document in deterministic (id) order."""
    offset = 0
    while True:
        rows, total = store.query(
            collection, QueryFilter(project_id=project_id, offset=offset, limit=page_size)
        )
        yield from rows
        offset += len(rows)
        if offset >= total or not rows:
            break
