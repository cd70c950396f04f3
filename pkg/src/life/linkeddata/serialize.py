"""Deterministic N-Triples and Turtle serialization.

Both serializers are pure functions of the triple set: lines/blocks are
sorted, blank nodes are relabeled ``_:b0, _:b1, ...`` in first-appearance
order over a sorted pre-pass, so equal graphs always produce byte-identical
output regardless of insertion order.
"""

from __future__ import annotations

import re

from .terms import BlankNode, IRI, Literal, Object, RdfGraph
from .vocab import PREFIXES, XSD

_PN_LOCAL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")


def _escape_literal(s: str) -> str:
    out = []
    for ch in s:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif ch == "\t":
            out.append("\\t")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


def _nt_term(term: Object, blank_labels: dict[str, str] | None = None) -> str:
    if isinstance(term, IRI):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        label = term.label if blank_labels is None else blank_labels[term.label]
        return f"_:{label}"
    if isinstance(term, Literal):
        body = f'"{_escape_literal(term.lexical)}"'
        if term.lang is not None:
            return f"{body}@{term.lang}"
        if term.datatype is not None and term.datatype.value != XSD + "string":
            return f"{body}^^<{term.datatype.value}>"
        return body
    raise TypeError(f"not an RDF term: {term!r}")


def _canonical_blank_labels(graph: RdfGraph) -> dict[str, str]:
    """Relabel blank nodes in first-appearance order over the sorted
    original-label rendering (the canonical pre-pass)."""
    rows = sorted(
        (((_nt_term(s), _nt_term(p), _nt_term(o)), s, o) for s, p, o in graph),
        key=lambda row: row[0],
    )
    labels: dict[str, str] = {}
    for _, s, o in rows:
        for term in (s, o):
            if isinstance(term, BlankNode) and term.label not in labels:
                labels[term.label] = f"b{len(labels)}"
    return labels


def serialize_ntriples(graph: RdfGraph) -> str:
    """One triple per line, lines sorted byte-wise, trailing newline unless
    the graph is empty."""
    labels = _canonical_blank_labels(graph)
    lines = sorted(
        f"{_nt_term(s, labels)} {_nt_term(p, labels)} {_nt_term(o, labels)} ."
        for s, p, o in graph
    )
    return "\n".join(lines) + ("\n" if lines else "")


def _ttl_iri(iri: IRI, prefixes: dict[str, str]) -> str:
    for prefix, namespace in prefixes.items():
        if iri.value.startswith(namespace):
            local = iri.value[len(namespace):]
            if _PN_LOCAL_RE.match(local):
                return f"{prefix}:{local}"
    return f"<{iri.value}>"


def _ttl_term(term: Object, prefixes: dict[str, str], labels: dict[str, str]) -> str:
    if isinstance(term, IRI):
        return _ttl_iri(term, prefixes)
    if isinstance(term, BlankNode):
        return f"_:{labels[term.label]}"
    if isinstance(term, Literal):
        body = f'"{_escape_literal(term.lexical)}"'
        if term.lang is not None:
            return f"{body}@{term.lang}"
        if term.datatype is not None and term.datatype.value != XSD + "string":
            return f"{body}^^{_ttl_iri(term.datatype, prefixes)}"
        return body
    raise TypeError(f"not an RDF term: {term!r}")


def serialize_turtle(graph: RdfGraph, extra_prefixes: dict[str, str] | None = None) -> str:
    """Deterministic Turtle: the fixed prefix table (plus any extras the
    caller binds under its base IRI), subjects sorted, predicates grouped
    with ';' (rdf:type first, rendered 'a'), objects grouped with ','."""
    prefixes = dict(PREFIXES)
    if extra_prefixes:
        prefixes.update(extra_prefixes)
    labels = _canonical_blank_labels(graph)

    subjects: dict[str, dict[str, list[str]]] = {}
    for s, p, o in graph:
        s_text = _ttl_term(s, prefixes, labels)
        p_text = "a" if p.value == PREFIXES["rdf"] + "type" else _ttl_term(p, prefixes, labels)
        o_text = _ttl_term(o, prefixes, labels)
        subjects.setdefault(s_text, {}).setdefault(p_text, []).append(o_text)

    header = [f"@prefix {name}: <{prefixes[name]}> ." for name in sorted(prefixes)]
    blocks: list[str] = []
    for s_text in sorted(subjects):
        predicates = subjects[s_text]
        # rdf:type first, then the rest in sorted order.
        ordered = sorted(predicates, key=lambda p: (p != "a", p))
        parts = [
            f"{p} {', '.join(sorted(set(predicates[p])))}" for p in ordered
        ]
        blocks.append(f"{s_text} " + " ;\n    ".join(parts) + " .")
    body = "\n\n".join(blocks)
    return "\n".join(header) + ("\n\n" + body + "\n" if blocks else "\n")
