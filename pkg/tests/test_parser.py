import random

import pytest

from gradedmt.errors import ParseError
from gradedmt.parser import infer_signature, parse_formula, parse_theory, render_formula
from gradedmt.randomgen import random_formula, roundtrip_suite
from gradedmt.syntax import (
    And,
    Atom,
    Eq,
    Exists,
    Forall,
    Implies,
    Not,
    Signature,
    Val,
    Var,
)


@pytest.fixture()
def sig():
    return Signature(
        predicates={"P": 1, "R": 2},
        functions={"f": 1, "c": 0},
        truth_constants=frozenset({"1/2", "3/4"}),
    )


def test_irreflexivity_axiom(sig):
    phi = parse_formula("forall x. (R(x,x) -> val(0))", sig)
    assert phi == Forall("x", Implies(Atom("R", (Var("x"), Var("x"))), Val("0")))


def test_degree_two_axiom(sig):
    phi = parse_formula("forall x. exists y z. (not (y ~ z) /\\ R(x,y) /\\ R(x,z))", sig)
    body = And(
        And(Not(Eq(Var("y"), Var("z"))), Atom("R", (Var("x"), Var("y")))),
        Atom("R", (Var("x"), Var("z"))),
    )
    assert phi == Forall("x", Exists("y", Exists("z", body)))


def test_val_roundtrip(sig):
    assert render_formula(parse_formula("val(1)", sig)) == "val(1)"
    assert render_formula(parse_formula("val(3/4)", sig)) == "val(3/4)"


def test_precedence(sig):
    phi = parse_formula("P(x) -> P(x) \\/ P(x) /\\ P(x) & P(x)", sig)
    # -> binds loosest, then \/, /\, &
    assert isinstance(phi, Implies)
    text = render_formula(phi)
    assert parse_formula(text, sig) == phi


def test_implication_right_associative(sig):
    phi = parse_formula("P(x) -> P(x) -> P(x)", sig)
    assert isinstance(phi, Implies) and isinstance(phi.right, Implies)


def test_quantifier_scopes_to_end(sig):
    phi = parse_formula("forall x. P(x) -> P(x)", sig)
    assert isinstance(phi, Forall) and isinstance(phi.body, Implies)


def test_unknown_symbol_reports_span(sig):
    with pytest.raises(ParseError) as err:
        parse_formula("forall x. Q(x)", sig)
    assert "line 1" in str(err.value)


def test_arity_mismatch(sig):
    with pytest.raises(ParseError):
        parse_formula("R(x)", sig)
    with pytest.raises(ParseError):
        parse_formula("P(x, y)", sig)


def test_unknown_truth_constant(sig):
    with pytest.raises(ParseError):
        parse_formula("val(7/8)", sig)


def test_theory_parsing_and_error_location(sig):
    theory = parse_theory("# comment\nP(c)\n\nR(c, c)\n", sig)
    assert len(theory) == 2
    with pytest.raises(ParseError) as err:
        parse_theory("P(c)\nQ(c)\n", sig)
    assert "line 2" in str(err.value)


def test_function_terms(sig):
    from gradedmt.syntax import App

    phi = parse_formula("f(f(c)) ~ c", sig)
    assert phi == Eq(App("f", (App("f", (App("c"),)),)), App("c"))
    assert render_formula(phi) == "f(f(c)) ~ c"


def test_roundtrip_random_sample():
    report = roundtrip_suite(seed=3, count=200)
    assert report["ok"], report["violations"][:3]


def test_roundtrip_structural_on_axioms(sig):
    for text in (
        "forall x. (R(x,x) -> val(0))",
        "forall x y. (R(x,y) -> R(y,x))",
        "forall x. exists y z. (not (y ~ z) /\\ R(x,y) /\\ R(x,z))",
        "val(1) <-> val(3/4) -> P(c)",
        "not not P(f(c))",
    ):
        phi = parse_formula(text, sig)
        assert parse_formula(render_formula(phi), sig) == phi


def test_renderer_emits_reparseable_randoms(sig):
    rnd = random.Random(99)
    for _ in range(100):
        phi = random_formula(rnd, sig, ("0", "1/2", "3/4", "1"), depth=5)
        assert parse_formula(render_formula(phi), sig) == phi


def test_infer_signature_subgroup_theory():
    text = (
        "forall x . exists y . (mul(y, y) ~ x)\n"
        "forall x . (mul(x, e) ~ x)\n"
        "forall x y . ((G(x) /\\ G(y)) -> G(mul(x, y)))\n"
        "forall x . (G(x) -> G(inv(x)))\n"
    )
    sig = infer_signature(text)
    assert sig.predicates == {"G": 1}
    assert sig.functions == {"mul": 2, "inv": 1, "e": 0}


def test_infer_signature_graph():
    sig = infer_signature("forall x. (R(x,x) -> val(0))")
    assert sig.predicates == {"R": 2}
    assert sig.functions == {}
