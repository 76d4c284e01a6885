import random

import pytest

from alciota.semantics import eval_concept
from alciota.syntax import (
    TOP,
    And,
    Atom,
    ConceptInclusion,
    GlobalDD,
    LocalDD,
    Ontology,
    has_local,
    parse_concept,
    parse_ontology,
    print_concept,
)
from alciota.tableau import ProverConfig, prove
from alciota.translate import (
    TranslationError,
    counter_concept,
    internalize_tbox,
    local_to_global_exp,
    local_to_global_poly,
    longest_simple_path,
    poly_translate,
    standard_translation,
)
from oracles import fo_holds, parse_fo, random_concept, random_interpretation

A, B = Atom("A"), Atom("B")
P = parse_concept


def test_exp_examples():
    assert local_to_global_exp(LocalDD(A)).concept == And(A, GlobalDD(A, TOP))
    assert local_to_global_exp(A).concept == A
    inner = And(A, GlobalDD(A, TOP))
    assert local_to_global_exp(LocalDD(LocalDD(A))).concept == And(inner, GlobalDD(inner, TOP))
    with pytest.raises(TranslationError):
        local_to_global_exp(GlobalDD(A, B))


def test_exp_is_equivalent():
    rng = random.Random(8)
    for _ in range(300):
        c = random_concept(rng, 4, global_=False)
        I = random_interpretation(rng, rng.randint(1, 6))
        assert eval_concept(c, I) == eval_concept(local_to_global_exp(c).concept, I)


def test_poly_schema():
    o = Ontology.of([ConceptInclusion(TOP, LocalDD(A))])
    out = local_to_global_poly(o)
    a = out.tbox[0].rhs.l
    assert a.name.startswith("__")
    assert out.tbox == (
        ConceptInclusion(TOP, And(a, GlobalDD(a, TOP))),
        ConceptInclusion(a, A),
        ConceptInclusion(A, a),
    )
    plain = parse_ontology("sub (A) (B)\n")
    assert local_to_global_poly(plain) == plain


def test_poly_shares_atoms():
    c = P("(and (the (the A)) (or (the A) (the (the A))))")
    concept, onto, names = poly_translate(c)
    assert len(names) == 2
    assert not has_local(concept) and not any(has_local(k) for k in onto.concepts())


def test_poly_preserves_verdicts():
    cases = [
        (P("(and A (some r (not A)))"), parse_ontology("sub (top) ((the A))\n")),
        (P("(some r top)"), parse_ontology("sub (top) ((the A))\n")),
        (P("(and (the A) (some r (and A B)))"), Ontology()),
        (P("(and (the A) (some r (and A (not (the A)))))"), Ontology()),
    ]
    for c, o in cases:
        c2, o2, _ = poly_translate(c, o)
        assert prove(c, o).verdict == prove(c2, o2, ProverConfig(logic="alcig")).verdict


def test_internalize_schema():
    c = internalize_tbox(A, [ConceptInclusion(A, B)], "alcil")
    assert print_concept(c) == "(and A (and (or (not A) B) (the (or (not (or (not A) B)) __t0))))"
    assert internalize_tbox(A, [], "alcig") == A
    with pytest.raises(TranslationError):
        internalize_tbox(LocalDD(A), [])


@pytest.mark.parametrize("target", ["alcil", "alcig"])
def test_internalize_verdicts(target):
    cases = [
        (A, [ConceptInclusion(A, P("(not A)"))], "unsat"),
        (P("(some r A)"), [ConceptInclusion(A, B), ConceptInclusion(B, P("bot"))], "unsat"),
        (P("(some r A)"), [ConceptInclusion(A, P("(some r A)"))], "sat"),
        (P("(and A (not B))"), [ConceptInclusion(TOP, B)], "unsat"),
    ]
    for c, t, expected in cases:
        assert prove(c, Ontology.of(t)).verdict == expected
        assert prove(internalize_tbox(c, t, target), cfg=ProverConfig(logic=target)).verdict == expected


def test_standard_translation_examples():
    assert standard_translation(A) == "A(x)"
    assert standard_translation(P("(some r A)")) == "exists y (r(x,y) & A(y))"
    assert standard_translation(LocalDD(A)) == "A(x) & forall y (A(y) -> x = y)"
    assert standard_translation(A, "y") == "A(y)"


def test_standard_translation_agrees_with_eval():
    rng = random.Random(9)
    for _ in range(300):
        c = random_concept(rng, 3)
        I = random_interpretation(rng, rng.randint(1, 4))
        f = parse_fo(standard_translation(c))
        ext = eval_concept(c, I)
        assert all(fo_holds(f, I, {"x": d}) == (d in ext) for d in I.domain)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_counter(n):
    r = prove(counter_concept(n))
    assert r.sat and r.model_checked
    assert longest_simple_path(r.model) >= 2 ** n
