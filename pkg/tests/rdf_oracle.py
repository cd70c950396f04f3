"""Independent RDF reader and graph-isomorphism check used as a test oracle.

Written directly from the N-Triples / Turtle grammars; shares no code with
the serializers under test. Covers the language subset the serializers can
emit (prefixed names, IRIs, blank node labels, quoted literals with escapes,
language tags, datatypes, the 'a' keyword, ';' and ',' grouping).
"""

from __future__ import annotations

import re

from life.linkeddata.terms import BlankNode, IRI, Literal, RdfGraph

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t", "b": "\b", "f": "\f"}


def _unescape(s):
    out = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = s[i + 1]
        if nxt in _ESCAPES:
            out.append(_ESCAPES[nxt])
            i += 2
        elif nxt == "u":
            out.append(chr(int(s[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            out.append(chr(int(s[i + 2 : i + 10], 16)))
            i += 10
        else:
            raise ValueError(f"bad escape \\{nxt}")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<iri><[^<>"{}|^`\\\s]*>)
    | (?P<literal>"(?:[^"\\]|\\.)*")
    | (?P<prefixdecl>@prefix\b|@base\b)
    | (?P<langtag>@[A-Za-z0-9-]+)
    | (?P<dtmark>\^\^)
    | (?P<blank>_:[A-Za-z0-9_.-]+)
    | (?P<punct>[;,.\[\]()])
    | (?P<pname>[A-Za-z_][A-Za-z0-9_.-]*?:[A-Za-z0-9_][A-Za-z0-9_.-]*|[A-Za-z_][A-Za-z0-9_.-]*:|:[A-Za-z0-9_][A-Za-z0-9_.-]*)
    | (?P<keyword>a\b|true\b|false\b)
    | (?P<number>[+-]?[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenize at offset {pos}: {text[pos:pos+30]!r}")
        pos = m.end()
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        tokens.append((kind, m.group()))
    return tokens


def parse_ntriples(text):
    """Parse N-Triples (one triple per line) into an RdfGraph."""
    graph = RdfGraph()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = _tokenize(line)
        if not tokens or tokens[-1] != ("punct", "."):
            raise ValueError(f"line {lineno}: missing terminating '.'")
        terms = []
        i = 0
        while i < len(tokens) - 1:
            kind, value = tokens[i]
            if kind == "iri":
                terms.append(IRI(_unescape(value[1:-1])))
                i += 1
            elif kind == "blank":
                terms.append(BlankNode(value[2:]))
                i += 1
            elif kind == "literal":
                lex = _unescape(value[1:-1])
                lang = None
                datatype = None
                if i + 1 < len(tokens) - 1 and tokens[i + 1][0] == "langtag":
                    lang = tokens[i + 1][1][1:]
                    i += 2
                elif i + 1 < len(tokens) - 1 and tokens[i + 1][0] == "dtmark":
                    dt = tokens[i + 2]
                    if dt[0] != "iri":
                        raise ValueError(f"line {lineno}: datatype must be an IRI")
                    datatype = IRI(_unescape(dt[1][1:-1]))
                    i += 3
                else:
                    i += 1
                terms.append(Literal(lex, lang=lang, datatype=datatype))
            else:
                raise ValueError(f"line {lineno}: unexpected token {value!r}")
        if len(terms) != 3:
            raise ValueError(f"line {lineno}: expected 3 terms, got {len(terms)}")
        graph.add(terms[0], terms[1], terms[2])
    return graph


class _TurtleParser:
    XSD = "http://www.w3.org/2001/XMLSchema#"

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.prefixes = {}
        self.graph = RdfGraph()

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def next(self):
        token = self.peek()
        self.pos += 1
        return token

    def expect(self, kind, value=None):
        actual = self.next()
        if actual[0] != kind or (value is not None and actual[1] != value):
            raise ValueError(f"expected {kind} {value or ''}, got {actual}")
        return actual

    def parse(self):
        while self.pos < len(self.tokens):
            kind, value = self.peek()
            if kind == "prefixdecl":
                self.next()
                if value == "@prefix":
                    pname = self.expect("pname")[1]
                    iri = self.expect("iri")[1]
                    self.expect("punct", ".")
                    self.prefixes[pname[:-1] if pname.endswith(":") else pname.split(":")[0]] = \
                        _unescape(iri[1:-1])
                else:
                    iri = self.expect("iri")[1]
                    self.expect("punct", ".")
                    self.base = _unescape(iri[1:-1])
                continue
            self.triples_block()
        return self.graph

    def triples_block(self):
        subject = self.term(as_subject=True)
        while True:
            predicate = self.predicate()
            while True:
                obj = self.term()
                self.graph.add(subject, predicate, obj)
                kind, value = self.peek()
                if (kind, value) == ("punct", ","):
                    self.next()
                    continue
                break
            kind, value = self.peek()
            if (kind, value) == ("punct", ";"):
                self.next()
                # a dangling ';' may be followed directly by '.'
                if self.peek() == ("punct", "."):
                    self.next()
                    return
                continue
            self.expect("punct", ".")
            return

    def predicate(self):
        kind, value = self.peek()
        if kind == "keyword" and value == "a":
            self.next()
            return IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        term = self.term()
        if not isinstance(term, IRI):
            raise ValueError(f"predicate must be an IRI, got {term!r}")
        return term

    def resolve_pname(self, pname):
        prefix, _, local = pname.partition(":")
        if prefix not in self.prefixes:
            raise ValueError(f"undeclared prefix {prefix!r}")
        return IRI(self.prefixes[prefix] + local)

    def term(self, as_subject=False):
        kind, value = self.next()
        if kind == "iri":
            return IRI(_unescape(value[1:-1]))
        if kind == "pname" or (kind == "keyword" and value in ("true", "false") and as_subject):
            return self.resolve_pname(value)
        if kind == "blank":
            return BlankNode(value[2:])
        if kind == "keyword" and value in ("true", "false"):
            return Literal(value, datatype=IRI(self.XSD + "boolean"))
        if kind == "number":
            if "." in value or "e" in value or "E" in value:
                dt = self.XSD + ("double" if "e" in value.lower() else "decimal")
            else:
                dt = self.XSD + "integer"
            return Literal(value, datatype=IRI(dt))
        if kind == "literal":
            lex = _unescape(value[1:-1])
            nkind, nvalue = self.peek()
            if nkind == "langtag":
                self.next()
                return Literal(lex, lang=nvalue[1:].lower())
            if nkind == "dtmark":
                self.next()
                dkind, dvalue = self.next()
                if dkind == "iri":
                    dt = IRI(_unescape(dvalue[1:-1]))
                elif dkind == "pname":
                    dt = self.resolve_pname(dvalue)
                else:
                    raise ValueError(f"bad datatype token {dvalue!r}")
                if dt.value == self.XSD + "string":
                    return Literal(lex)
                return Literal(lex, datatype=dt)
            return Literal(lex)
        raise ValueError(f"unexpected token {kind} {value!r}")


def parse_turtle(text):
    return _TurtleParser(text).parse()


# --- isomorphism ------------------------------------------------------------

def _ground(term):
    return not isinstance(term, BlankNode)


def _blank_labels(graph):
    labels = set()
    for s, _, o in graph:
        if isinstance(s, BlankNode):
            labels.add(s.label)
        if isinstance(o, BlankNode):
            labels.add(o.label)
    return labels


def _signature(graph, label):
    sig = []
    for s, p, o in graph:
        s_blank = isinstance(s, BlankNode) and s.label == label
        o_blank = isinstance(o, BlankNode) and o.label == label
        if s_blank:
            sig.append(("s", p, o if _ground(o) else ("blank",)))
        if o_blank:
            sig.append(("o", p, s if _ground(s) else ("blank",)))
    return tuple(sorted(map(repr, sig)))


def isomorphic(g1, g2):
    """True when a blank-node bijection maps g1 exactly onto g2."""
    if len(g1) != len(g2):
        return False
    ground1 = {t for t in g1 if _ground(t[0]) and _ground(t[2])}
    ground2 = {t for t in g2 if _ground(t[0]) and _ground(t[2])}
    if ground1 != ground2:
        return False
    blanks1 = sorted(_blank_labels(g1))
    blanks2 = sorted(_blank_labels(g2))
    if len(blanks1) != len(blanks2):
        return False
    rest1 = [t for t in g1 if t not in ground1]
    rest2 = {t for t in g2 if t not in ground2}
    sig2 = {b: _signature(g2, b) for b in blanks2}
    candidates = {
        b1: [b2 for b2 in blanks2 if sig2[b2] == _signature(g1, b1)] for b1 in blanks1
    }
    if any(not c for c in candidates.values()):
        return False

    order = sorted(blanks1, key=lambda b: len(candidates[b]))

    def check(mapping):
        def apply(term):
            if isinstance(term, BlankNode):
                return BlankNode(mapping[term.label])
            return term

        return all((apply(s), p, apply(o)) in rest2 for s, p, o in rest1)

    def backtrack(i, mapping, used):
        if i == len(order):
            return check(mapping)
        b1 = order[i]
        for b2 in candidates[b1]:
            if b2 in used:
                continue
            mapping[b1] = b2
            used.add(b2)
            if backtrack(i + 1, mapping, used):
                return True
            del mapping[b1]
            used.discard(b2)
        return False

    return backtrack(0, {}, set())
