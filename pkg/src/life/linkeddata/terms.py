"""RDF terms and a set-semantics triple graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class IRI:
    value: str

    def __post_init__(self):
        if ":" not in self.value:
            raise ValueError(f"IRI must be absolute (contain a scheme): {self.value!r}")


@dataclass(frozen=True)
class BlankNode:
    label: str


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: str | None = None
    datatype: IRI | None = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise ValueError("a literal cannot carry both a language tag and a datatype")
        if self.lang is not None:
            object.__setattr__(self, "lang", self.lang.lower())


Subject = Union[IRI, BlankNode]
Object = Union[IRI, BlankNode, Literal]
Triple = tuple[Subject, IRI, Object]


class RdfGraph:
    """A set of triples; duplicates collapse, insertion order is never
    observable (the serializers are pure functions of the set)."""

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: set[Triple] = set(triples)

    def add(self, subject: Subject, predicate: IRI, obj: Object) -> None:
        self._triples.add((subject, predicate, obj))

    def update(self, other: "RdfGraph | Iterable[Triple]") -> None:
        self._triples.update(other)

    def triples(self) -> set[Triple]:
        return set(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, RdfGraph):
            return NotImplemented
        return self._triples == other._triples

    def subjects(self) -> set[Subject]:
        return {s for s, _, _ in self._triples}

    def nodes(self) -> set[Object]:
        out: set[Object] = set()
        for s, _, o in self._triples:
            out.add(s)
            out.add(o)
        return out
