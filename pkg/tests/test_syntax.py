import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alciota.syntax import (
    TOP,
    And,
    Atom,
    ConceptAssertion,
    ConceptInclusion,
    Exists,
    Forall,
    GlobalDD,
    LocalDD,
    Not,
    Ontology,
    Or,
    ParseError,
    RoleAssertion,
    desugar,
    neg,
    parse_axiom,
    parse_concept,
    parse_ontology,
    print_axiom,
    print_concept,
    print_ontology,
    size,
    walk,
)

A, B = Atom("A"), Atom("B")

leaves = st.sampled_from([A, B, Atom("C"), TOP, parse_concept("bot")])
roles = st.sampled_from(["r", "s"])
concepts = st.recursive(
    leaves,
    lambda sub: st.one_of(
        sub.map(Not),
        sub.map(LocalDD),
        st.tuples(sub, sub).map(lambda p: And(*p)),
        st.tuples(sub, sub).map(lambda p: Or(*p)),
        st.tuples(sub, sub).map(lambda p: GlobalDD(*p)),
        st.tuples(roles, sub).map(lambda p: Exists(*p)),
        st.tuples(roles, sub).map(lambda p: Forall(*p)),
    ),
    max_leaves=12,
)


def test_parse_basic():
    assert parse_concept("(and A (not B))") == And(A, Not(B))
    assert parse_concept("(the (some r A))") == LocalDD(Exists("r", A))
    assert parse_concept("(that A B)") == GlobalDD(A, B)
    assert parse_concept("  top ") is TOP


def test_parse_lowercase_atom_in_concept_position():
    c = parse_concept("(the (and building (all tallerThan (not building))))")
    assert c == LocalDD(And(Atom("building"), Forall("tallerThan", Not(Atom("building")))))


def test_parse_error_location_and_expected():
    with pytest.raises(ParseError) as err:
        parse_concept("(and A")
    assert err.value.line == 1
    assert "ATOM" in err.value.expected
    with pytest.raises(ParseError) as err:
        parse_concept("(frob A)")
    assert err.value.column == 2
    assert "and" in err.value.expected
    with pytest.raises(ParseError):
        parse_concept("A B")
    with pytest.raises(ParseError):
        parse_concept("(some A B)")


@settings(max_examples=300, deadline=None)
@given(concepts)
def test_print_parse_roundtrip(c):
    assert parse_concept(print_concept(c)) == c


@settings(max_examples=200, deadline=None)
@given(concepts)
def test_desugar_leaves_core_only(c):
    core = desugar(c)
    assert not any(isinstance(n, (Or, Forall)) for n in walk(core))


def test_size_accounting():
    assert size(A) == 1
    assert size(parse_concept("(some r A)")) == 3
    assert size(parse_concept("(that A (not B))")) == 4


def test_neg_cancels():
    assert neg(Not(A)) == A
    assert neg(A) == Not(A)


def test_axioms_roundtrip():
    for line in ["sub (A) ((not B))", "inst a ((the A))", "rel r a b"]:
        assert print_axiom(parse_axiom(line)) == line


def test_ontology_parse():
    text = "# toy\nsub (A) (B)\ninst a (A)\nrel r a b\nsub (A) (B)\n"
    o = parse_ontology(text)
    assert o.tbox == (ConceptInclusion(A, B),)
    assert o.abox == (ConceptAssertion("a", A), RoleAssertion("r", "a", "b"))
    assert o.individuals == ["a", "b"]
    assert parse_ontology(print_ontology(o)) == o
    assert Ontology.of([]) == Ontology()


def test_ontology_parse_error_line():
    with pytest.raises(ParseError) as err:
        parse_ontology("sub (A) (B)\nfoo (A)\n")
    assert err.value.line == 2
