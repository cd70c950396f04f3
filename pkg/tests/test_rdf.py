import random

import pytest

from generators import random_graph
from life.linkeddata import (
    BlankNode,
    IRI,
    Literal,
    RdfGraph,
    serialize_ntriples,
    serialize_turtle,
)
from rdf_oracle import isomorphic, parse_ntriples, parse_turtle


class TestTerms:
    def test_iri_must_be_absolute(self):
        with pytest.raises(ValueError):
            IRI("not-an-iri")

    def test_literal_lang_and_datatype_exclusive(self):
        with pytest.raises(ValueError):
            Literal("x", lang="en", datatype=IRI("http://www.w3.org/2001/XMLSchema#string"))

    def test_language_tags_lowercased(self):
        assert Literal("x", lang="EN-Latn").lang == "en-latn"

    def test_graph_set_semantics(self):
        g = RdfGraph()
        t = (IRI("http://x/a"), IRI("http://x/p"), Literal("v"))
        g.add(*t)
        g.add(*t)
        assert len(g) == 1


class TestNTriples:
    def test_single_triple_grammar(self):
        g = RdfGraph()
        g.add(IRI("http://x/a"), IRI("http://x/p"), Literal("v", lang="en"))
        assert serialize_ntriples(g) == '<http://x/a> <http://x/p> "v"@en .\n'

    def test_deterministic(self):
        g = random_graph(random.Random(1))
        assert serialize_ntriples(g) == serialize_ntriples(g)

    def test_insertion_order_invisible(self):
        rng = random.Random(2)
        g = random_graph(rng)
        triples = list(g.triples())
        for seed in range(5):
            random.Random(seed).shuffle(triples)
            permuted = RdfGraph(triples)
            assert serialize_ntriples(permuted) == serialize_ntriples(g)

    def test_sorted_lines(self):
        g = random_graph(random.Random(3))
        lines = serialize_ntriples(g).splitlines()
        assert lines == sorted(lines)

    def test_escaping(self):
        g = RdfGraph()
        g.add(IRI("http://x/a"), IRI("http://x/p"), Literal('say "hi"\n\tok\\'))
        out = serialize_ntriples(g)
        assert '\\"hi\\"' in out and "\\n" in out and "\\t" in out and "\\\\" in out

    def test_blank_labels_canonical(self):
        g1 = RdfGraph()
        g1.add(BlankNode("x"), IRI("http://x/p"), Literal("v"))
        g1.add(BlankNode("x"), IRI("http://x/q"), BlankNode("y"))
        out = serialize_ntriples(g1)
        assert "_:b0" in out and "_:b1" in out
        assert "_:x" not in out

    def test_reparse_isomorphic(self):
        for seed in range(25):
            g = random_graph(random.Random(seed))
            assert isomorphic(parse_ntriples(serialize_ntriples(g)), g)


class TestTurtle:
    def test_object_grouping_with_comma(self):
        g = RdfGraph()
        s, p = IRI("http://x/a"), IRI("http://x/p")
        g.add(s, p, Literal("one"))
        g.add(s, p, Literal("two"))
        out = serialize_turtle(g)
        body = [line for line in out.splitlines() if line.startswith("<http://x/a>")]
        assert len(body) == 1
        assert '"one", "two"' in body[0]

    def test_quote_escaped(self):
        g = RdfGraph()
        g.add(IRI("http://x/a"), IRI("http://x/p"), Literal('has "quotes"'))
        assert '\\"quotes\\"' in serialize_turtle(g)

    def test_prefix_table_present(self):
        out = serialize_turtle(RdfGraph())
        for prefix in ("rdf:", "ontolex:", "lexinfo:", "skos:", "ligt:", "dct:", "xsd:", "rdfs:"):
            assert f"@prefix {prefix}" in out

    def test_deterministic(self):
        g = random_graph(random.Random(4))
        triples = list(g.triples())
        random.Random(0).shuffle(triples)
        assert serialize_turtle(RdfGraph(triples)) == serialize_turtle(g)

    def test_rdf_type_rendered_as_a(self):
        g = RdfGraph()
        g.add(
            IRI("http://x/a"),
            IRI("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"),
            IRI("http://www.w3.org/ns/lemon/ontolex#Word"),
        )
        assert "<http://x/a> a ontolex:Word ." in serialize_turtle(g)

    def test_reparse_isomorphic(self):
        for seed in range(25):
            g = random_graph(random.Random(100 + seed))
            assert isomorphic(parse_turtle(serialize_turtle(g)), g)


class TestOracleSelfChecks:
    """The isomorphism checker itself must distinguish graphs."""

    def test_relabelled_blanks_isomorphic(self):
        g1, g2 = RdfGraph(), RdfGraph()
        p = IRI("http://x/p")
        g1.add(BlankNode("a"), p, BlankNode("b"))
        g2.add(BlankNode("n1"), p, BlankNode("n2"))
        assert isomorphic(g1, g2)

    def test_different_structure_not_isomorphic(self):
        g1, g2 = RdfGraph(), RdfGraph()
        p = IRI("http://x/p")
        g1.add(BlankNode("a"), p, BlankNode("a"))
        g2.add(BlankNode("n1"), p, BlankNode("n2"))
        assert not isomorphic(g1, g2)

    def test_ground_difference_detected(self):
        g1, g2 = RdfGraph(), RdfGraph()
        g1.add(IRI("http://x/a"), IRI("http://x/p"), Literal("1"))
        g2.add(IRI("http://x/a"), IRI("http://x/p"), Literal("2"))
        assert not isomorphic(g1, g2)
