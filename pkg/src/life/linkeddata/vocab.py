"""Pinned vocabulary constants for the RDF mappers.

This table is the normative contract for the mapping tests: exact class and
property IRIs for the lexicon (OntoLex-Lemon core, lexinfo part-of-speech
values) and for interlinear text (Ligt core, plus a tiny extension namespace
under the deployment's base IRI for ordering indices, since the core
vocabulary has no positional property).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Project
from .terms import IRI

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
ONTOLEX = "http://www.w3.org/ns/lemon/ontolex#"
LEXINFO = "http://www.lexinfo.net/ontology/3.0/lexinfo#"
SKOS = "http://www.w3.org/2004/02/skos/core#"
LIGT = "http://purl.org/liodi/ligt#"
DCT = "http://purl.org/dc/terms/"
XSD = "http://www.w3.org/2001/XMLSchema#"

PREFIXES: dict[str, str] = {
    "rdf": RDF,
    "rdfs": RDFS,
    "ontolex": ONTOLEX,
    "lexinfo": LEXINFO,
    "skos": SKOS,
    "ligt": LIGT,
    "dct": DCT,
    "xsd": XSD,
}

RDF_TYPE = IRI(RDF + "type")
RDF_VALUE = IRI(RDF + "value")
XSD_INTEGER = IRI(XSD + "integer")

ONTOLEX_LEXICAL_ENTRY = IRI(ONTOLEX + "LexicalEntry")
ONTOLEX_WORD = IRI(ONTOLEX + "Word")
ONTOLEX_MWE = IRI(ONTOLEX + "MultiwordExpression")
ONTOLEX_FORM = IRI(ONTOLEX + "Form")
ONTOLEX_LEXICAL_SENSE = IRI(ONTOLEX + "LexicalSense")
ONTOLEX_CANONICAL_FORM = IRI(ONTOLEX + "canonicalForm")
ONTOLEX_WRITTEN_REP = IRI(ONTOLEX + "writtenRep")
ONTOLEX_SENSE = IRI(ONTOLEX + "sense")
ONTOLEX_REFERENCE = IRI(ONTOLEX + "reference")

LEXINFO_POS = IRI(LEXINFO + "partOfSpeech")
SKOS_DEFINITION = IRI(SKOS + "definition")

LIGT_DOCUMENT = IRI(LIGT + "Document")
LIGT_UTTERANCE = IRI(LIGT + "Utterance")
LIGT_WORD = IRI(LIGT + "Word")
LIGT_MORPH = IRI(LIGT + "Morph")
LIGT_HAS_UTTERANCES = IRI(LIGT + "hasUtterances")
LIGT_HAS_WORDS = IRI(LIGT + "hasWords")
LIGT_HAS_MORPHS = IRI(LIGT + "hasMorphs")
LIGT_TRANSLATION = IRI(LIGT + "translation")
LIGT_GLOSS = IRI(LIGT + "gloss")

# Positional-index extension property lives under the deployment base IRI.
LIGT_EXT_FRAGMENT = "ns/ligt-ext#"

# Default mapping from common part-of-speech labels to lexinfo individuals.
DEFAULT_POS_MAP: dict[str, str] = {
    "adj": LEXINFO + "adjective",
    "adjective": LEXINFO + "adjective",
    "adp": LEXINFO + "adposition",
    "adv": LEXINFO + "adverb",
    "adverb": LEXINFO + "adverb",
    "conj": LEXINFO + "conjunction",
    "det": LEXINFO + "determiner",
    "interj": LEXINFO + "interjection",
    "intj": LEXINFO + "interjection",
    "n": LEXINFO + "noun",
    "noun": LEXINFO + "noun",
    "num": LEXINFO + "numeral",
    "part": LEXINFO + "particle",
    "post": LEXINFO + "adposition",
    "prep": LEXINFO + "adposition",
    "pro": LEXINFO + "pronoun",
    "pron": LEXINFO + "pronoun",
    "prt": LEXINFO + "particle",
    "v": LEXINFO + "verb",
    "verb": LEXINFO + "verb",
}


@dataclass
class MappingContext:
    base_iri: str
    project_slug: str
    lang_tag: str
    pos_map: dict[str, IRI] = field(default_factory=dict)
    metalang: str = "en"

    def __post_init__(self):
        if ":" not in self.base_iri:
            raise ValueError(f"base IRI must be absolute: {self.base_iri!r}")
        if not self.base_iri.endswith("/"):
            raise ValueError("base IRI must end with '/'")
        self.pos_map = {k.lower(): v for k, v in self.pos_map.items()}

    @property
    def index_property(self) -> IRI:
        return IRI(self.base_iri + LIGT_EXT_FRAGMENT + "index")


def context_for_project(
    project: Project,
    base_iri: str,
    pos_map: dict[str, str] | None = None,
    metalang: str = "en",
) -> MappingContext:
    """Build a mapping context: the BCP-47 tag is the project's ISO 639-3
    code, and the part-of-speech map defaults to the common-label table."""
    mapping = dict(DEFAULT_POS_MAP)
    if pos_map:
        mapping.update(pos_map)
    return MappingContext(
        base_iri=base_iri,
        project_slug=project.slug,
        lang_tag=project.language_code.lower(),
        pos_map={k: IRI(v) for k, v in mapping.items()},
        metalang=metalang,
    )
