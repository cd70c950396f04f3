"""Lexicon → OntoLex-Lemon triples, plus external-resource linking.

Entry IRIs are ``<base>lexicon/<slug>/<entry-id>``; the canonical form and
the senses hang off fragment IRIs (``#form``, ``#sense-k``) rather than
blank nodes so exported graphs stay diffable.
"""

from __future__ import annotations

from ..model import LexicalEntry
from .linkset import LinkSet
from .terms import IRI, Literal, RdfGraph
from .vocab import (
    LEXINFO_POS,
    MappingContext,
    ONTOLEX_CANONICAL_FORM,
    ONTOLEX_FORM,
    ONTOLEX_LEXICAL_ENTRY,
    ONTOLEX_LEXICAL_SENSE,
    ONTOLEX_MWE,
    ONTOLEX_REFERENCE,
    ONTOLEX_SENSE,
    ONTOLEX_WORD,
    ONTOLEX_WRITTEN_REP,
    RDF_TYPE,
    SKOS_DEFINITION,
)


def entry_iri(entry: LexicalEntry, ctx: MappingContext) -> IRI:
    return IRI(f"{ctx.base_iri}lexicon/{ctx.project_slug}/{entry.id}")


def sense_iri(entry: LexicalEntry, sense_no: int, ctx: MappingContext) -> IRI:
    return IRI(f"{entry_iri(entry, ctx).value}#sense-{sense_no}")


def entry_to_ontolex(entry: LexicalEntry, ctx: MappingContext) -> tuple[RdfGraph, list[str]]:
    """Map one entry. Unmapped part-of-speech labels produce no
    lexinfo:partOfSpeech triple and one warning."""
    graph = RdfGraph()
    warnings: list[str] = []
    e = entry_iri(entry, ctx)
    graph.add(e, RDF_TYPE, ONTOLEX_LEXICAL_ENTRY)
    multiword = any(c.isspace() for c in entry.headword)
    graph.add(e, RDF_TYPE, ONTOLEX_MWE if multiword else ONTOLEX_WORD)

    form = IRI(f"{e.value}#form")
    graph.add(e, ONTOLEX_CANONICAL_FORM, form)
    graph.add(form, RDF_TYPE, ONTOLEX_FORM)
    graph.add(form, ONTOLEX_WRITTEN_REP, Literal(entry.headword, lang=ctx.lang_tag))

    pos_iri = ctx.pos_map.get(entry.pos.lower())
    if pos_iri is not None:
        graph.add(e, LEXINFO_POS, pos_iri)
    else:
        warnings.append(
            f"no part-of-speech mapping for {entry.pos!r} (entry {entry.headword!r})"
        )

    for sense in entry.senses:
        s = sense_iri(entry, sense.sense_no, ctx)
        graph.add(e, ONTOLEX_SENSE, s)
        graph.add(s, RDF_TYPE, ONTOLEX_LEXICAL_SENSE)
        graph.add(
            s,
            SKOS_DEFINITION,
            Literal(sense.definition or sense.gloss, lang=ctx.metalang),
        )
    return graph, warnings


def link_externals(entry: LexicalEntry, linkset: LinkSet, ctx: MappingContext) -> RdfGraph:
    """Emit one ontolex:reference per sense for every linkset hit on
    (lowercased headword, pos) or the pos-wildcard record; misses emit
    nothing."""
    graph = RdfGraph()
    targets = linkset.lookup(entry.headword.lower(), entry.pos.lower() or None)
    for target_iri, _source in targets:
        for sense in entry.senses:
            graph.add(sense_iri(entry, sense.sense_no, ctx), ONTOLEX_REFERENCE, target_iri)
    return graph
