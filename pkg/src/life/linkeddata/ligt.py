"""Interlinear glossed text → Ligt triples.

Document IRI: ``<base>texts/<slug>/<doc-id>``. Utterance, word and morph
nodes are minted fragment IRIs with positional indices (``#u0``, ``#u0-w1``,
``#u0-w1-m2``) so graphs are diffable; ordering is carried by an explicit
integer index property from the small extension namespace under the base
IRI, since containment links alone are unordered.
"""

from __future__ import annotations

from ..model import IGTDocument
from .terms import IRI, Literal, RdfGraph
from .vocab import (
    LIGT_DOCUMENT,
    LIGT_GLOSS,
    LIGT_HAS_MORPHS,
    LIGT_HAS_UTTERANCES,
    LIGT_HAS_WORDS,
    LIGT_MORPH,
    LIGT_TRANSLATION,
    LIGT_UTTERANCE,
    LIGT_WORD,
    MappingContext,
    RDF_TYPE,
    RDF_VALUE,
    XSD_INTEGER,
)


def document_iri(doc: IGTDocument, ctx: MappingContext) -> IRI:
    return IRI(f"{ctx.base_iri}texts/{ctx.project_slug}/{doc.id}")


def _index(n: int) -> Literal:
    return Literal(str(n), datatype=XSD_INTEGER)


def igt_to_ligt(doc: IGTDocument, ctx: MappingContext) -> RdfGraph:
    graph = RdfGraph()
    d = document_iri(doc, ctx)
    graph.add(d, RDF_TYPE, LIGT_DOCUMENT)
    index_prop = ctx.index_property
    for i, utt in enumerate(doc.utterances):
        u = IRI(f"{d.value}#u{i}")
        graph.add(d, LIGT_HAS_UTTERANCES, u)
        graph.add(u, RDF_TYPE, LIGT_UTTERANCE)
        graph.add(u, RDF_VALUE, Literal(utt.phrase, lang=ctx.lang_tag))
        graph.add(u, index_prop, _index(i))
        if utt.translation is not None:
            text, lang = utt.translation
            graph.add(u, LIGT_TRANSLATION, Literal(text, lang=lang))
        for j, word in enumerate(utt.words):
            w = IRI(f"{d.value}#u{i}-w{j}")
            graph.add(u, LIGT_HAS_WORDS, w)
            graph.add(w, RDF_TYPE, LIGT_WORD)
            graph.add(w, RDF_VALUE, Literal(word.surface))
            graph.add(w, index_prop, _index(j))
            for k, morph in enumerate(word.morphs):
                m = IRI(f"{d.value}#u{i}-w{j}-m{k}")
                graph.add(w, LIGT_HAS_MORPHS, m)
                graph.add(m, RDF_TYPE, LIGT_MORPH)
                graph.add(m, RDF_VALUE, Literal(morph.form))
                graph.add(m, LIGT_GLOSS, Literal(morph.gloss))
                graph.add(m, index_prop, _index(k))
    return graph
