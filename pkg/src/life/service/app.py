"""HTTP API under /api/v1.

Bearer-token authentication, role-based authorization per project, JSON
bodies, errors as ``{"error": {"code", "message", ...}}``. Optimistic
concurrency everywhere: writes carry the expected revision (body ``rev`` or
``If-Match`` header) and a mismatch answers 409 with the current revision.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from .. import glosser
from ..dictionary import compile_dictionary, render_html, render_print
from ..errors import (
    DuplicateValue,
    Forbidden,
    InvalidCredentials,
    InvalidName,
    LifeError,
    NotFound,
    ParseError,
    SchemaViolation,
    StaleRevision,
    Unauthenticated,
    UnsupportedFormat,
    UploadTooLarge,
    ValidationFailed,
)
from ..linkeddata import LinkSet, load_linkset
from ..model import (
    IGTDocument,
    LexicalEntry,
    MediaAsset,
    MediaKind,
    Project,
    Role,
    User,
    Utterance,
    ValidationReport,
    new_id,
    now_utc,
    slugify,
    validate_entry,
    validate_project,
    validate_utterance,
)
from ..store import MemoryStore, QueryFilter, iter_documents
from .auth import Authenticator
from .config import Config
from .exports import EXTENSIONS, collect_bundle, export_project
from .multipart import parse_multipart

_STATUS = {
    Unauthenticated: 401,
    InvalidCredentials: 401,
    Forbidden: 403,
    NotFound: 404,
    StaleRevision: 409,
    DuplicateValue: 409,
    UploadTooLarge: 413,
    UnsupportedFormat: 400,
    ValidationFailed: 400,
    SchemaViolation: 400,
    ParseError: 400,
    InvalidName: 400,
}


def _error_body(exc: LifeError) -> dict:
    error: dict = {"code": exc.code, "message": str(exc)}
    if isinstance(exc, StaleRevision):
        error["current_rev"] = exc.current_rev
    if isinstance(exc, UnsupportedFormat):
        error["supported"] = exc.supported
    if isinstance(exc, ValidationFailed) and exc.report is not None:
        error["issues"] = exc.report.to_doc()["issues"]
    if isinstance(exc, SchemaViolation):
        error["path"] = exc.path
        error["line"] = exc.line
    return {"error": error}


class GlossService:
    """Per-project model snapshots with atomic swap; predictions imported
    from external models take precedence over the built-in suggester."""

    def __init__(self, store: MemoryStore):
        self.store = store
        self._lock = threading.Lock()
        self._cache: dict[str, tuple[glosser.GlossModel, dict[str, glosser.GlossSuggestion]]] = {}

    def _load(self, project_id: str):
        try:
            doc, _ = self.store.get("models", project_id)
        except NotFound:
            return glosser.GlossModel(project_id=project_id), {}
        model = glosser.GlossModel.from_doc(doc)
        predictions = {
            word: glosser.GlossSuggestion(
                morphs=[
                    (m["form"], glosser.MorphType(m["type"]), m["gloss"], m["confidence"])
                    for m in s["morphs"]
                ],
                score=s.get("score", 0.0),
            )
            for word, s in doc.get("predictions", {}).items()
        }
        return model, predictions

    def snapshot(self, project_id: str):
        with self._lock:
            if project_id not in self._cache:
                self._cache[project_id] = self._load(project_id)
            return self._cache[project_id]

    def _persist(self, project_id: str, model, predictions) -> None:
        doc = model.to_doc()
        doc["predictions"] = {w: s.to_doc() for w, s in predictions.items()}
        try:
            _, rev = self.store.get("models", project_id)
        except NotFound:
            rev = None
        self.store.put("models", doc, expected_rev=rev)
        with self._lock:
            self._cache[project_id] = (model, predictions)

    def retrain(self, project_id: str, corpus, lexicon) -> int:
        old_model, predictions = self.snapshot(project_id)
        model = glosser.train(corpus, lexicon, project_id=project_id)
        if model.total_morph_tokens:
            model.version = max(old_model.version + 1, model.version)
        self._persist(project_id, model, predictions)
        return model.version

    def import_predictions(self, project_id: str, data: bytes) -> int:
        model, predictions = self.snapshot(project_id)
        merged = dict(predictions)
        imported = glosser.import_predictions(data)
        for word, suggestion in imported:
            merged[word] = suggestion
        self._persist(project_id, model, merged)
        return len(imported)

    def suggest(self, project_id: str, word: str) -> glosser.GlossSuggestion:
        model, predictions = self.snapshot(project_id)
        if word in predictions:
            return predictions[word]
        return glosser.suggest(model, word)

    def drop(self, project_id: str) -> None:
        with self._lock:
            self._cache.pop(project_id, None)


def _require(payload: dict, key: str, typ=str):
    value = payload.get(key)
    if not isinstance(value, typ) or (typ is str and not value):
        raise SchemaViolation(f"missing or invalid {key!r}", path=f"/{key}")
    return value


def _check(report: ValidationReport) -> None:
    if not report.ok:
        raise ValidationFailed("validation failed", report=report)


MIME_KINDS = {"audio": MediaKind.AUDIO, "video": MediaKind.VIDEO, "image": MediaKind.IMAGE}


def create_app(store: MemoryStore, config: Config | None = None) -> FastAPI:
    config = config or Config()
    app = FastAPI(title="life", docs_url=None, redoc_url=None)
    auth = Authenticator(store, token_ttl_hours=config.token_ttl_hours)
    gloss = GlossService(store)
    linkset: LinkSet | None = None
    if config.linkset and Path(config.linkset).exists():
        linkset = load_linkset(Path(config.linkset).read_text("utf-8"))

    app.state.store = store
    app.state.config = config
    app.state.auth = auth

    @app.exception_handler(LifeError)
    async def life_error_handler(request: Request, exc: LifeError):
        status = 500
        for cls, code in _STATUS.items():
            if isinstance(exc, cls):
                status = code
                break
        headers = {"WWW-Authenticate": "Bearer"} if status == 401 else None
        return JSONResponse(_error_body(exc), status_code=status, headers=headers)

    async def json_body(request: Request) -> dict:
        try:
            payload = await request.json()
        except Exception:
            raise SchemaViolation("request body must be a JSON object", path="/")
        if not isinstance(payload, dict):
            raise SchemaViolation("request body must be a JSON object", path="/")
        return payload

    def bearer(request: Request) -> str | None:
        header = request.headers.get("authorization", "")
        if header.lower().startswith("bearer "):
            return header[7:].strip()
        return None

    def expected_rev(request: Request, payload: dict | None = None,
                     rev_param: str | None = None) -> str | None:
        if rev_param:
            return rev_param
        if payload and isinstance(payload.get("rev"), str) and payload["rev"]:
            return payload["rev"]
        if_match = request.headers.get("if-match")
        return if_match.strip('"') if if_match else None

    def get_project(project_id: str) -> Project:
        doc, rev = store.get("projects", project_id)
        return Project.from_doc(doc, rev=rev)

    def with_rev(doc: dict, rev: str) -> dict:
        return dict(doc, rev=rev)

    # --- auth -------------------------------------------------------------

    @app.post("/api/v1/auth/login")
    async def login(request: Request):
        payload = await json_body(request)
        token = auth.login(_require(payload, "username"), _require(payload, "password"))
        return {"token": token.token, "user_id": token.user_id,
                "expires_at": token.expires_at}

    @app.post("/api/v1/auth/logout", status_code=204)
    def logout(request: Request):
        token = bearer(request)
        auth.resolve(token)
        auth.logout(token or "")
        return Response(status_code=204)

    # --- projects -----------------------------------------------------------

    @app.get("/api/v1/projects")
    def list_projects(request: Request):
        user_id = auth.resolve(bearer(request))
        items = []
        for doc, rev in iter_documents(store, "projects"):
            if user_id in doc.get("members", {}):
                items.append(with_rev(doc, rev))
        return {"items": items, "total": len(items)}

    @app.post("/api/v1/projects", status_code=201)
    async def create_project(request: Request):
        user_id = auth.resolve(bearer(request))
        payload = await json_body(request)
        name = _require(payload, "name")
        slug = payload.get("slug") or slugify(name)
        for doc, _ in iter_documents(store, "projects"):
            if doc.get("slug") == slug:
                raise DuplicateValue(f"slug {slug!r} is taken")
        project = Project(
            id=new_id(),
            name=name,
            slug=slug,
            language_name=payload.get("language_name", ""),
            language_code=payload.get("language_code", "und"),
            alphabet=payload.get("alphabet", []),
            pos_inventory=payload.get("pos_inventory", []),
            members={user_id: Role.OWNER},
            created_at=now_utc(),
        )
        _check(validate_project(project))
        rev = store.put("projects", project.to_doc())
        return with_rev(project.to_doc(), rev)

    @app.get("/api/v1/projects/{project_id}")
    def read_project(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        doc, rev = store.get("projects", project_id)
        return with_rev(doc, rev)

    @app.put("/api/v1/projects/{project_id}")
    async def update_project(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        doc, rev = store.get("projects", project_id)
        current = Project.from_doc(doc)
        for key in ("name", "language_name", "language_code", "alphabet", "pos_inventory"):
            if key in payload:
                setattr(current, key, payload[key])
        _check(validate_project(current))
        new_rev = store.put(
            "projects", current.to_doc(), expected_rev=expected_rev(request, payload) or ""
        )
        return with_rev(current.to_doc(), new_rev)

    @app.delete("/api/v1/projects/{project_id}", status_code=204)
    def delete_project(project_id: str, request: Request,
                       rev: str | None = Query(default=None)):
        auth.authorize(bearer(request), project_id, "admin")
        store.get("projects", project_id)
        store.delete("projects", project_id, expected_rev(request, rev_param=rev) or "")
        for collection in ("entries", "texts", "assets"):
            for child, child_rev in list(iter_documents(store, collection, project_id)):
                store.delete(collection, child["id"], child_rev)
        try:
            _, model_rev = store.get("models", project_id)
            store.delete("models", project_id, model_rev)
        except NotFound:
            pass
        gloss.drop(project_id)
        return Response(status_code=204)

    # --- members ----------------------------------------------------------

    @app.get("/api/v1/projects/{project_id}/members")
    def list_members(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        project = get_project(project_id)
        items = []
        for user_id, role in sorted(project.members.items()):
            username = None
            try:
                user_doc, _ = store.get("users", user_id)
                username = user_doc.get("username")
            except NotFound:
                pass
            items.append({"user_id": user_id, "role": role.value, "username": username})
        return {"items": items}

    def _write_members(project: Project, members: dict[str, Role], rev: str) -> str:
        if Role.OWNER not in members.values():
            raise ValidationFailed("a project must keep at least one owner")
        project.members = members
        return store.put("projects", project.to_doc(), expected_rev=rev)

    @app.put("/api/v1/projects/{project_id}/members/{user_id}")
    async def set_member(project_id: str, user_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "admin")
        payload = await json_body(request)
        try:
            role = Role(_require(payload, "role"))
        except ValueError:
            raise SchemaViolation(f"unknown role {payload.get('role')!r}", path="/role")
        store.get("users", user_id)  # 404 for unknown users
        project = get_project(project_id)
        members = dict(project.members)
        members[user_id] = role
        rev = _write_members(project, members, expected_rev(request, payload) or project.rev)
        return {"user_id": user_id, "role": role.value, "rev": rev}

    @app.delete("/api/v1/projects/{project_id}/members/{user_id}", status_code=204)
    def remove_member(project_id: str, user_id: str, request: Request,
                      rev: str | None = Query(default=None)):
        auth.authorize(bearer(request), project_id, "admin")
        project = get_project(project_id)
        if user_id not in project.members:
            raise NotFound(f"user {user_id} is not a member")
        members = dict(project.members)
        del members[user_id]
        _write_members(project, members, expected_rev(request, rev_param=rev) or project.rev)
        return Response(status_code=204)

    # --- entries ------------------------------------------------------------

    def _headword_taken(project_id: str, headword: str, homonym_no: int,
                        exclude_id: str | None = None) -> bool:
        rows, _ = store.query("entries", QueryFilter(
            project_id=project_id,
            field_equals=[("headword", headword), ("homonym_no", homonym_no)],
        ))
        return any(doc["id"] != exclude_id for doc, _ in rows)

    def _entry_from_payload(payload: dict, project_id: str, entry_id: str) -> LexicalEntry:
        doc = dict(payload)
        doc.setdefault("senses", [])
        doc["id"] = entry_id
        doc["project_id"] = project_id
        doc.pop("rev", None)
        entry = LexicalEntry.from_doc(doc)
        if not entry.created_at:
            entry.created_at = now_utc()
        entry.modified_at = now_utc()
        return entry

    @app.get("/api/v1/projects/{project_id}/entries")
    def list_entries(project_id: str, request: Request,
                     q: str | None = Query(default=None),
                     pos: str | None = Query(default=None),
                     offset: int = Query(default=0, ge=0),
                     limit: int = Query(default=100, ge=1, le=500)):
        auth.authorize(bearer(request), project_id, "read")
        field_equals = [("pos", pos)] if pos else []
        rows, total = store.query("entries", QueryFilter(
            project_id=project_id,
            field_equals=field_equals,
            headword_prefix=q if q is not None else None,
            offset=offset,
            limit=limit,
        ))
        return {"items": [with_rev(doc, rev) for doc, rev in rows], "total": total}

    @app.post("/api/v1/projects/{project_id}/entries", status_code=201)
    async def create_entry(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        entry = _entry_from_payload(payload, project_id, new_id())
        _check(validate_entry(entry, get_project(project_id)))
        if _headword_taken(project_id, entry.headword, entry.homonym_no):
            raise DuplicateValue(
                f"headword {entry.headword!r} homonym {entry.homonym_no} already exists"
            )
        rev = store.put("entries", entry.to_doc())
        return with_rev(entry.to_doc(), rev)

    @app.get("/api/v1/projects/{project_id}/entries/{entry_id}")
    def read_entry(project_id: str, entry_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        doc, rev = store.get("entries", entry_id)
        if doc.get("project_id") != project_id:
            raise NotFound(f"entries/{entry_id} not found in this project")
        return with_rev(doc, rev)

    @app.put("/api/v1/projects/{project_id}/entries/{entry_id}")
    async def update_entry(project_id: str, entry_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        existing, current_rev = store.get("entries", entry_id)
        if existing.get("project_id") != project_id:
            raise NotFound(f"entries/{entry_id} not found in this project")
        entry = _entry_from_payload(payload, project_id, entry_id)
        entry.created_at = existing.get("created_at", entry.created_at)
        _check(validate_entry(entry, get_project(project_id)))
        if _headword_taken(project_id, entry.headword, entry.homonym_no, exclude_id=entry_id):
            raise DuplicateValue(
                f"headword {entry.headword!r} homonym {entry.homonym_no} already exists"
            )
        rev = store.put("entries", entry.to_doc(),
                        expected_rev=expected_rev(request, payload) or "")
        return with_rev(entry.to_doc(), rev)

    @app.delete("/api/v1/projects/{project_id}/entries/{entry_id}", status_code=204)
    def delete_entry(project_id: str, entry_id: str, request: Request,
                     rev: str | None = Query(default=None)):
        auth.authorize(bearer(request), project_id, "write")
        doc, _ = store.get("entries", entry_id)
        if doc.get("project_id") != project_id:
            raise NotFound(f"entries/{entry_id} not found in this project")
        store.delete("entries", entry_id, expected_rev(request, rev_param=rev) or "")
        return Response(status_code=204)

    # --- texts ----------------------------------------------------------------

    def _text_from_payload(payload: dict, project_id: str, text_id: str) -> IGTDocument:
        doc = dict(payload)
        doc["id"] = text_id
        doc["project_id"] = project_id
        doc.pop("rev", None)
        for utt in doc.get("utterances") or []:
            if isinstance(utt, dict):
                utt.setdefault("id", new_id())
        text = IGTDocument.from_doc(doc)
        report = ValidationReport()
        seen_ids = set()
        for i, utt in enumerate(text.utterances):
            if utt.id in seen_ids:
                report.error(f"utterances/{i}/id", "utterance ids must be unique")
            seen_ids.add(utt.id)
            for issue in validate_utterance(utt).issues:
                report.issues.append(type(issue)(
                    issue.severity, f"utterances/{i}/{issue.path}", issue.message
                ))
        _check(report)
        if not text.created_at:
            text.created_at = now_utc()
        text.modified_at = now_utc()
        return text

    @app.get("/api/v1/projects/{project_id}/texts")
    def list_texts(project_id: str, request: Request,
                   offset: int = Query(default=0, ge=0),
                   limit: int = Query(default=100, ge=1, le=500)):
        auth.authorize(bearer(request), project_id, "read")
        rows, total = store.query("texts", QueryFilter(
            project_id=project_id, offset=offset, limit=limit
        ))
        return {"items": [with_rev(doc, rev) for doc, rev in rows], "total": total}

    @app.post("/api/v1/projects/{project_id}/texts", status_code=201)
    async def create_text(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        text = _text_from_payload(payload, project_id, new_id())
        rev = store.put("texts", text.to_doc())
        return with_rev(text.to_doc(), rev)

    @app.get("/api/v1/projects/{project_id}/texts/{text_id}")
    def read_text(project_id: str, text_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        doc, rev = store.get("texts", text_id)
        if doc.get("project_id") != project_id:
            raise NotFound(f"texts/{text_id} not found in this project")
        return with_rev(doc, rev)

    @app.put("/api/v1/projects/{project_id}/texts/{text_id}")
    async def update_text(project_id: str, text_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        existing, _ = store.get("texts", text_id)
        if existing.get("project_id") != project_id:
            raise NotFound(f"texts/{text_id} not found in this project")
        text = _text_from_payload(payload, project_id, text_id)
        text.created_at = existing.get("created_at", text.created_at)
        rev = store.put("texts", text.to_doc(),
                        expected_rev=expected_rev(request, payload) or "")
        return with_rev(text.to_doc(), rev)

    @app.delete("/api/v1/projects/{project_id}/texts/{text_id}", status_code=204)
    def delete_text(project_id: str, text_id: str, request: Request,
                    rev: str | None = Query(default=None)):
        auth.authorize(bearer(request), project_id, "write")
        doc, _ = store.get("texts", text_id)
        if doc.get("project_id") != project_id:
            raise NotFound(f"texts/{text_id} not found in this project")
        store.delete("texts", text_id, expected_rev(request, rev_param=rev) or "")
        return Response(status_code=204)

    # --- utterances (nested in texts) -------------------------------------

    def _load_text(project_id: str, text_id: str) -> tuple[IGTDocument, str]:
        doc, rev = store.get("texts", text_id)
        if doc.get("project_id") != project_id:
            raise NotFound(f"texts/{text_id} not found in this project")
        return IGTDocument.from_doc(doc, rev=rev), rev

    @app.get("/api/v1/projects/{project_id}/texts/{text_id}/utterances")
    def list_utterances(project_id: str, text_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        text, rev = _load_text(project_id, text_id)
        return {"items": [u.to_doc() for u in text.utterances], "rev": rev}

    @app.post("/api/v1/projects/{project_id}/texts/{text_id}/utterances", status_code=201)
    async def append_utterance(project_id: str, text_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        text, rev = _load_text(project_id, text_id)
        utt_doc = dict(payload)
        utt_doc.pop("rev", None)
        utt_doc.setdefault("id", new_id())
        utterance = Utterance.from_doc(utt_doc)
        _check(validate_utterance(utterance))
        text.utterances.append(utterance)
        text.modified_at = now_utc()
        new_rev = store.put("texts", text.to_doc(),
                            expected_rev=expected_rev(request, payload) or rev)
        return {"utterance": utterance.to_doc(), "rev": new_rev}

    @app.put("/api/v1/projects/{project_id}/texts/{text_id}/utterances/{utterance_id}")
    async def update_utterance(project_id: str, text_id: str, utterance_id: str,
                               request: Request):
        auth.authorize(bearer(request), project_id, "write")
        payload = await json_body(request)
        text, rev = _load_text(project_id, text_id)
        utt_doc = dict(payload)
        utt_doc.pop("rev", None)
        utt_doc["id"] = utterance_id
        utterance = Utterance.from_doc(utt_doc)
        _check(validate_utterance(utterance))
        for i, existing in enumerate(text.utterances):
            if existing.id == utterance_id:
                text.utterances[i] = utterance
                break
        else:
            raise NotFound(f"utterance {utterance_id} not found")
        text.modified_at = now_utc()
        new_rev = store.put("texts", text.to_doc(),
                            expected_rev=expected_rev(request, payload) or rev)
        return {"utterance": utterance.to_doc(), "rev": new_rev}

    # --- media ------------------------------------------------------------

    @app.post("/api/v1/projects/{project_id}/media", status_code=201)
    async def upload_media(project_id: str, request: Request,
                           filename: str | None = Query(default=None)):
        auth.authorize(bearer(request), project_id, "write")
        body = await request.body()
        if len(body) > config.max_upload_bytes:
            raise UploadTooLarge(
                f"upload exceeds {config.max_upload_mb} MiB"
            )
        content_type = request.headers.get("content-type", "")
        mime = content_type.split(";")[0].strip()
        data = body
        if mime == "multipart/form-data":
            parts = [p for p in parse_multipart(body, content_type) if p.filename]
            if not parts:
                raise SchemaViolation("multipart body carries no file part", path="/")
            part = parts[0]
            data = part.data
            mime = part.content_type or "application/octet-stream"
            filename = filename or part.filename
        if not data:
            raise SchemaViolation("empty upload", path="/")
        prefix = mime.split("/")[0]
        if prefix not in MIME_KINDS:
            raise ValidationFailed(
                f"unsupported media type {mime!r}; expected audio/*, video/* or image/*"
            )
        digest = store.put_blob(data)
        asset = MediaAsset(
            id=new_id(),
            project_id=project_id,
            kind=MIME_KINDS[prefix],
            mime=mime,
            byte_size=len(data),
            sha256=digest,
            filename=filename or "",
            created_at=now_utc(),
        )
        rev = store.put("assets", asset.to_doc())
        return with_rev(asset.to_doc(), rev)

    @app.get("/api/v1/projects/{project_id}/media")
    def list_media(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        rows, total = store.query("assets", QueryFilter(project_id=project_id, limit=500))
        return {"items": [with_rev(doc, rev) for doc, rev in rows], "total": total}

    @app.get("/api/v1/media/{sha256}")
    def get_media(sha256: str, request: Request):
        user_id = auth.resolve(bearer(request))
        rows, _ = store.query("assets", QueryFilter(field_equals=[("sha256", sha256)]))
        if not rows:
            raise NotFound(f"no asset with hash {sha256}")
        mime = rows[0][0].get("mime", "application/octet-stream")
        for doc, _ in rows:
            try:
                project = get_project(doc["project_id"])
            except NotFound:
                continue
            role = project.members.get(user_id)
            if role is not None:
                return Response(content=store.get_blob(sha256), media_type=mime)
        raise Forbidden("no readable project references this media")

    # --- glossing ------------------------------------------------------------

    @app.post("/api/v1/projects/{project_id}/gloss/suggest")
    async def suggest_glosses(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        payload = await json_body(request)
        words = payload.get("words")
        if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
            raise SchemaViolation("'words' must be an array of strings", path="/words")
        if any(any(c.isspace() for c in w) for w in words):
            raise SchemaViolation("words must not contain whitespace", path="/words")
        suggestions = [gloss.suggest(project_id, word).to_doc() for word in words if word]
        return {"suggestions": suggestions}

    def _glossed_corpus(project_id: str):
        corpus = []
        for doc, _ in iter_documents(store, "texts", project_id):
            for utt in IGTDocument.from_doc(doc).utterances:
                if utt.glossed:
                    corpus.append(utt)
        return corpus

    @app.post("/api/v1/projects/{project_id}/gloss/retrain")
    def retrain(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        corpus = _glossed_corpus(project_id)
        lexicon = [
            LexicalEntry.from_doc(doc) for doc, _ in iter_documents(store, "entries", project_id)
        ]
        version = gloss.retrain(project_id, corpus, lexicon)
        return {"version": version, "trained_on": len(corpus)}

    @app.post("/api/v1/projects/{project_id}/gloss/predictions")
    async def import_gloss_predictions(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "write")
        body = await request.body()
        imported = gloss.import_predictions(project_id, body)
        return {"imported": imported}

    @app.get("/api/v1/projects/{project_id}/sketch")
    def sketch(project_id: str, request: Request):
        auth.authorize(bearer(request), project_id, "read")
        corpus = _glossed_corpus(project_id)
        model, _ = gloss.snapshot(project_id)
        return glosser.sketch_summary(corpus, model).to_doc()

    # --- export & dictionary -------------------------------------------------

    @app.get("/api/v1/projects/{project_id}/export")
    def export(project_id: str, request: Request, format: str = Query(default="json")):
        auth.authorize(bearer(request), project_id, "read")
        project = get_project(project_id)
        body, media_type = export_project(
            store, project, format,
            base_iri=config.base_iri, metalang=config.metalang, linkset=linkset,
        )
        filename = f"{project.slug}.{EXTENSIONS[format]}"
        return Response(
            content=body,
            media_type=media_type,
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    @app.get("/api/v1/projects/{project_id}/dictionary")
    def dictionary(project_id: str, request: Request,
                   format: str = Query(default="json")):
        auth.authorize(bearer(request), project_id, "read")
        project = get_project(project_id)
        bundle = collect_bundle(store, project)
        doc = compile_dictionary(bundle.entries, project)
        if format == "html":
            return Response(content=render_html(doc, title=project.name),
                            media_type="text/html; charset=utf-8")
        if format == "print":
            return Response(content=render_print(doc, title=project.name),
                            media_type="text/plain; charset=utf-8")
        if format != "json":
            raise UnsupportedFormat(
                f"unsupported dictionary format {format!r}",
                supported=["json", "html", "print"],
            )
        return doc.to_doc()

    # --- static web UI -----------------------------------------------------

    if config.static_dir and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="webui")

    return app
