"""Linked-data export: OntoLex-Lemon for the lexicon, Ligt for interlinear
text, offline linksets for external references, and deterministic Turtle /
N-Triples serialization."""

from .ligt import document_iri, igt_to_ligt
from .linkset import LinkSet, load_linkset
from .ontolex import entry_iri, entry_to_ontolex, link_externals, sense_iri
from .serialize import serialize_ntriples, serialize_turtle
from .terms import BlankNode, IRI, Literal, RdfGraph
from .vocab import MappingContext, context_for_project

__all__ = [
    "BlankNode",
    "IRI",
    "LinkSet",
    "Literal",
    "MappingContext",
    "RdfGraph",
    "context_for_project",
    "document_iri",
    "entry_iri",
    "entry_to_ontolex",
    "igt_to_ligt",
    "link_externals",
    "load_linkset",
    "sense_iri",
    "serialize_ntriples",
    "serialize_turtle",
]
