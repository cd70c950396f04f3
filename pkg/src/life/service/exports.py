"""Project export dispatch shared by the HTTP endpoint and the CLI."""

from __future__ import annotations

from ..errors import UnsupportedFormat
from ..ingest import ProjectBundle, export_csv, export_json, serialize_sfm_lexicon
from ..linkeddata import (
    LinkSet,
    RdfGraph,
    context_for_project,
    entry_to_ontolex,
    igt_to_ligt,
    link_externals,
    serialize_ntriples,
    serialize_turtle,
)
from ..linkeddata.vocab import LIGT_EXT_FRAGMENT
from ..model import IGTDocument, LexicalEntry, MediaAsset, Project
from ..store import MemoryStore, iter_documents

EXPORT_FORMATS = {
    "ontolex-ttl": "text/turtle",
    "ligt-ttl": "text/turtle",
    "nt": "application/n-triples",
    "json": "application/json",
    "csv": "text/csv",
    "sfm": "text/plain; charset=utf-8",
}

EXTENSIONS = {
    "ontolex-ttl": "ttl",
    "ligt-ttl": "ttl",
    "nt": "nt",
    "json": "json",
    "csv": "csv",
    "sfm": "sfm",
}


def collect_bundle(store: MemoryStore, project: Project) -> ProjectBundle:
    entries = [
        LexicalEntry.from_doc(doc, rev=rev)
        for doc, rev in iter_documents(store, "entries", project.id)
    ]
    texts = [
        IGTDocument.from_doc(doc, rev=rev)
        for doc, rev in iter_documents(store, "texts", project.id)
    ]
    assets = [
        MediaAsset.from_doc(doc, rev=rev)
        for doc, rev in iter_documents(store, "assets", project.id)
    ]
    return ProjectBundle(project=project, entries=entries, texts=texts, assets=assets)


def lexicon_graph(bundle: ProjectBundle, ctx, linkset: LinkSet | None) -> RdfGraph:
    graph = RdfGraph()
    for entry in bundle.entries:
        entry_graph, _warnings = entry_to_ontolex(entry, ctx)
        graph.update(entry_graph)
        if linkset is not None:
            graph.update(link_externals(entry, linkset, ctx))
    return graph


def igt_graph(bundle: ProjectBundle, ctx) -> RdfGraph:
    graph = RdfGraph()
    for text in bundle.texts:
        graph.update(igt_to_ligt(text, ctx))
    return graph


def export_project(
    store: MemoryStore,
    project: Project,
    fmt: str,
    *,
    base_iri: str,
    metalang: str = "en",
    linkset: LinkSet | None = None,
) -> tuple[bytes, str]:
    """Render the project in the requested format; returns (bytes, media
    type). Unsupported formats list the supported families (the structured
    ones — RDF, JSON and CSV — plus SFM)."""
    if fmt not in EXPORT_FORMATS:
        raise UnsupportedFormat(
            f"unsupported format {fmt!r}; supported: {', '.join(sorted(EXPORT_FORMATS))}",
            supported=sorted(EXPORT_FORMATS),
        )
    bundle = collect_bundle(store, project)
    ctx = context_for_project(project, base_iri, metalang=metalang)
    ttl_prefixes = {"ligtext": base_iri + LIGT_EXT_FRAGMENT}
    if fmt == "ontolex-ttl":
        body = serialize_turtle(lexicon_graph(bundle, ctx, linkset), ttl_prefixes)
        return body.encode("utf-8"), EXPORT_FORMATS[fmt]
    if fmt == "ligt-ttl":
        body = serialize_turtle(igt_graph(bundle, ctx), ttl_prefixes)
        return body.encode("utf-8"), EXPORT_FORMATS[fmt]
    if fmt == "nt":
        combined = lexicon_graph(bundle, ctx, linkset)
        combined.update(igt_graph(bundle, ctx))
        return serialize_ntriples(combined).encode("utf-8"), EXPORT_FORMATS[fmt]
    if fmt == "json":
        return export_json(bundle), EXPORT_FORMATS[fmt]
    if fmt == "csv":
        return export_csv(bundle.entries).encode("utf-8"), EXPORT_FORMATS[fmt]
    return serialize_sfm_lexicon(bundle.entries).encode("utf-8"), EXPORT_FORMATS[fmt]
