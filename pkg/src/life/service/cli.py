"""Administrative command-line interface.

Commands operate directly on the data directory (no HTTP):

    life serve --config life.conf
    life user add anna [--email a@x.org] [--password ...]
    life project create --name "Demo" --language-code dmo --owner anna
    life import --project demo --format sfm lexicon.txt
    life export --project demo --format ontolex-ttl -o demo.ttl
    life gloss train --project demo
    life gloss eval --project demo [--holdout-every 5]

The config file path comes from --config or $LIFE_CONFIG; the documented
LIFE_* environment variables override file values either way.
"""

from __future__ import annotations

import argparse
import getpass
import os
import sys
from pathlib import Path

from .. import glosser
from ..errors import DuplicateValue, LifeError, NotFound
from ..ingest import import_csv, import_json, parse_igt_text, parse_sfm_lexicon, remap_ids
from ..linkeddata import load_linkset
from ..model import (
    IGTDocument,
    LexicalEntry,
    Project,
    Role,
    new_id,
    now_utc,
    slugify,
    validate_project,
)
from ..store import FileStore, QueryFilter, iter_documents
from .app import GlossService, create_app
from .config import Config, load_config
from .exports import export_project


def _open_store(config: Config) -> FileStore:
    return FileStore(config.data_dir)


def _project_by_slug(store: FileStore, slug: str) -> Project:
    for doc, rev in iter_documents(store, "projects"):
        if doc.get("slug") == slug:
            return Project.from_doc(doc, rev=rev)
    raise NotFound(f"no project with slug {slug!r}")


def _user_by_name(store: FileStore, username: str) -> dict:
    rows, _ = store.query("users", QueryFilter(field_equals=[("username", username)], limit=1))
    if not rows:
        raise NotFound(f"no user named {username!r}")
    return rows[0][0]


def cmd_serve(args, config: Config) -> int:
    import uvicorn

    store = _open_store(config)
    app = create_app(store, config)
    print(f"listening on http://{config.addr} (data: {config.data_dir})")
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


def cmd_user_add(args, config: Config) -> int:
    from .auth import Authenticator

    password = args.password or getpass.getpass("password: ")
    store = _open_store(config)
    try:
        user = Authenticator(store).create_user(args.name, password, email=args.email)
    finally:
        store.close()
    print(f"created user {user.username} ({user.id})")
    return 0


def cmd_project_create(args, config: Config) -> int:
    store = _open_store(config)
    try:
        members = {}
        if args.owner:
            members[_user_by_name(store, args.owner)["id"]] = Role.OWNER
        slug = args.slug or slugify(args.name)
        for doc, _ in iter_documents(store, "projects"):
            if doc.get("slug") == slug:
                raise DuplicateValue(f"slug {slug!r} is taken")
        project = Project(
            id=new_id(),
            name=args.name,
            slug=slug,
            language_name=args.language_name or args.name,
            language_code=args.language_code,
            alphabet=[u for u in (args.alphabet or "").split(",") if u],
            pos_inventory=[p for p in (args.pos or "").split(",") if p],
            members=members,
            created_at=now_utc(),
        )
        report = validate_project(project)
        errors = [i for i in report.issues if i.severity.value == "error" and i.path != "members"]
        if errors:
            for issue in errors:
                print(f"error: {issue.path}: {issue.message}", file=sys.stderr)
            return 1
        if not members:
            print("note: project has no owner yet; add one with a member role", file=sys.stderr)
        store.put("projects", project.to_doc())
    finally:
        store.close()
    print(f"created project {project.slug} ({project.id})")
    return 0


def _free_homonym(store: FileStore, project_id: str, headword: str, wanted: int) -> int:
    taken = {
        doc.get("homonym_no", 1)
        for doc, _ in iter_documents(store, "entries", project_id)
        if doc.get("headword") == headword
    }
    homonym = wanted
    while homonym in taken:
        homonym += 1
    return homonym


def _import_entries(store: FileStore, project: Project, entries: list[LexicalEntry]) -> int:
    count = 0
    for entry in entries:
        entry.project_id = project.id
        free = _free_homonym(store, project.id, entry.headword, entry.homonym_no)
        if free != entry.homonym_no:
            print(f"note: {entry.headword!r} homonym bumped to {free}", file=sys.stderr)
            entry.homonym_no = free
        store.put("entries", entry.to_doc())
        count += 1
    return count


def cmd_import(args, config: Config) -> int:
    store = _open_store(config)
    try:
        project = _project_by_slug(store, args.project)
        text = Path(args.file).read_text("utf-8")
        if args.format == "sfm":
            entries, warnings = parse_sfm_lexicon(text, project_id=project.id)
            for warning in warnings:
                print(f"warning: {warning}", file=sys.stderr)
            n = _import_entries(store, project, entries)
            print(f"imported {n} entries")
        elif args.format == "csv":
            n = _import_entries(store, project, import_csv(text, project_id=project.id))
            print(f"imported {n} entries")
        elif args.format == "json":
            bundle = remap_ids(import_json(text.encode("utf-8")), project_id=project.id)
            n = _import_entries(store, project, bundle.entries)
            for igt in bundle.texts:
                store.put("texts", igt.to_doc())
            for asset in bundle.assets:
                store.put("assets", asset.to_doc())
            print(f"imported {n} entries, {len(bundle.texts)} texts, "
                  f"{len(bundle.assets)} asset records")
        elif args.format == "igt":
            doc, warnings = parse_igt_text(
                text, project_id=project.id, title=Path(args.file).stem
            )
            for warning in warnings:
                print(f"warning: {warning}", file=sys.stderr)
            store.put("texts", doc.to_doc())
            print(f"imported 1 text with {len(doc.utterances)} utterances")
    finally:
        store.close()
    return 0


def cmd_export(args, config: Config) -> int:
    store = _open_store(config)
    try:
        project = _project_by_slug(store, args.project)
        linkset = None
        if config.linkset and Path(config.linkset).exists():
            linkset = load_linkset(Path(config.linkset).read_text("utf-8"))
        body, media_type = export_project(
            store, project, args.format,
            base_iri=config.base_iri, metalang=config.metalang, linkset=linkset,
        )
    finally:
        store.close()
    if args.output and args.output != "-":
        Path(args.output).write_bytes(body)
        print(f"wrote {len(body)} bytes ({media_type}) to {args.output}")
    else:
        sys.stdout.write(body.decode("utf-8"))
    return 0


def _glossed_corpus(store: FileStore, project_id: str):
    corpus = []
    for doc, _ in iter_documents(store, "texts", project_id):
        for utt in IGTDocument.from_doc(doc).utterances:
            if utt.glossed:
                corpus.append(utt)
    return corpus


def cmd_gloss_train(args, config: Config) -> int:
    store = _open_store(config)
    try:
        project = _project_by_slug(store, args.project)
        corpus = _glossed_corpus(store, project.id)
        lexicon = [
            LexicalEntry.from_doc(doc)
            for doc, _ in iter_documents(store, "entries", project.id)
        ]
        version = GlossService(store).retrain(project.id, corpus, lexicon)
    finally:
        store.close()
    print(f"model version {version} (utterances: {len(corpus)}, entries: {len(lexicon)})")
    return 0


def cmd_gloss_eval(args, config: Config) -> int:
    store = _open_store(config)
    try:
        project = _project_by_slug(store, args.project)
        corpus = _glossed_corpus(store, project.id)
        heldout = corpus[:: args.holdout_every]
        training = [u for i, u in enumerate(corpus) if i % args.holdout_every != 0]
        if not heldout or not training:
            print("not enough glossed utterances to evaluate", file=sys.stderr)
            return 1
        lexicon = [
            LexicalEntry.from_doc(doc)
            for doc, _ in iter_documents(store, "entries", project.id)
        ]
        model = glosser.train(training, lexicon, project_id=project.id)
        metrics = glosser.evaluate(model, heldout)
    finally:
        store.close()
    print(f"held out {metrics.n_utterances} of {len(corpus)} utterances "
          f"(every {args.holdout_every}th)")
    print(f"morph gloss accuracy: {metrics.morph_gloss_accuracy:.3f}")
    print(f"segmentation: P={metrics.seg_precision:.3f} R={metrics.seg_recall:.3f} "
          f"F1={metrics.seg_f1:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="life", description=__doc__.splitlines()[0])
    parser.add_argument("--config", default=os.environ.get("LIFE_CONFIG"),
                        help="config file (key = value lines)")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("serve", help="run the HTTP server")

    user = sub.add_parser("user", help="user administration")
    user_sub = user.add_subparsers(dest="user_command", required=True)
    user_add = user_sub.add_parser("add", help="create a user")
    user_add.add_argument("name")
    user_add.add_argument("--email")
    user_add.add_argument("--password", help="omit to be prompted")

    project = sub.add_parser("project", help="project administration")
    project_sub = project.add_subparsers(dest="project_command", required=True)
    create = project_sub.add_parser("create", help="create a project")
    create.add_argument("--name", required=True)
    create.add_argument("--slug")
    create.add_argument("--language-name")
    create.add_argument("--language-code", default="und")
    create.add_argument("--alphabet", help="comma-separated ordered units, e.g. a,b,ch,c")
    create.add_argument("--pos", help="comma-separated POS inventory")
    create.add_argument("--owner", help="username to make project owner")

    imp = sub.add_parser("import", help="import a file into a project")
    imp.add_argument("--project", required=True, help="project slug")
    imp.add_argument("--format", required=True, choices=["sfm", "json", "csv", "igt"])
    imp.add_argument("file")

    exp = sub.add_parser("export", help="export a project")
    exp.add_argument("--project", required=True, help="project slug")
    exp.add_argument("--format", required=True)
    exp.add_argument("-o", "--output", help="output file ('-' for stdout)")

    gloss = sub.add_parser("gloss", help="gloss model operations")
    gloss_sub = gloss.add_subparsers(dest="gloss_command", required=True)
    train = gloss_sub.add_parser("train", help="rebuild the model from stored data")
    train.add_argument("--project", required=True)
    evaluate = gloss_sub.add_parser("eval", help="hold-out evaluation")
    evaluate.add_argument("--project", required=True)
    evaluate.add_argument("--holdout-every", type=int, default=5)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    try:
        if args.command == "serve":
            return cmd_serve(args, config)
        if args.command == "user":
            return cmd_user_add(args, config)
        if args.command == "project":
            return cmd_project_create(args, config)
        if args.command == "import":
            return cmd_import(args, config)
        if args.command == "export":
            return cmd_export(args, config)
        if args.command == "gloss":
            if args.gloss_command == "train":
                return cmd_gloss_train(args, config)
            return cmd_gloss_eval(args, config)
    except LifeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
