import itertools

import pytest

from gradedmt.errors import BudgetError, SignatureError
from gradedmt.generation import (
    AssignmentGrid,
    enumerate_structures,
    generate_sentences,
    ground_terms,
    prenex_candidates,
    qf_matrices,
)
from gradedmt.parser import parse_formula
from gradedmt.semantics import Structure, all_assignments, eval_formula
from gradedmt.syntax import (
    EXISTS,
    FORALL,
    PrenexClass,
    Signature,
    classify_prenex,
    expand_with_truth_constants,
    free_variables,
    is_sentence,
)


def test_sentences_are_closed_and_deterministic(sig_p, g4):
    first = generate_sentences(sig_p, g4.elements, 2)
    second = generate_sentences(sig_p, g4.elements, 2)
    assert first == second
    assert all(is_sentence(phi) for phi in first)
    assert len(set(first)) == len(first)


def test_sentence_membership(sig_p, g4):
    depth1 = generate_sentences(sig_p, g4.elements, 1)
    assert parse_formula("forall x1. P(x1)", sig_p) in depth1
    expanded = expand_with_truth_constants(sig_p, g4)
    depth2 = generate_sentences(expanded, g4.elements, 2)
    assert parse_formula("val(3/4) -> forall x1. P(x1)", expanded) in depth2
    assert parse_formula("forall x1. P(x1)", expanded) in depth2


def test_truth_constants_licensed_only(sig_p, g4):
    base = generate_sentences(sig_p, g4.elements, 1)
    assert parse_formula("val(1)", sig_p) in base
    expanded_sig = expand_with_truth_constants(sig_p, g4)
    licensed = parse_formula("val(3/4)", expanded_sig)
    assert licensed not in base
    assert licensed in generate_sentences(expanded_sig, g4.elements, 1)


def test_generation_budget(sig_r, g4):
    with pytest.raises(BudgetError):
        generate_sentences(sig_r, g4.elements, 3, budget=500)


def test_qf_matrices_are_quantifier_free(sig_r, g4):
    mats = qf_matrices(sig_r, g4.elements, ["x1", "x2"], 1)
    assert all(str(classify_prenex(m)) == "QuantifierFree" for m in mats)
    assert len(set(mats)) == len(mats)


def test_prenex_candidates_fit_target(sig_r, g4):
    mats = qf_matrices(sig_r, g4.elements, ["x1", "x2"], 1)
    target = PrenexClass(EXISTS, 2)
    for cand in prenex_candidates(mats, ["x1", "x2"], target):
        assert cand.prenex_class.within(target)
        got = classify_prenex(cand.formula)
        if cand.blocks > 0:
            assert got.kind == cand.lead and got.blocks == cand.blocks
        assert set(cand.params) == free_variables(cand.formula)


def test_prenex_candidates_include_degenerate_lead(sig_r, g4):
    mats = qf_matrices(sig_r, g4.elements, ["x1", "x2"], 0)
    leads = {(c.lead, c.blocks) for c in prenex_candidates(mats, ["x1", "x2"], PrenexClass(EXISTS, 2))}
    assert (EXISTS, 1) in leads and (EXISTS, 2) in leads and (FORALL, 1) in leads
    assert (FORALL, 2) not in leads


def test_grid_matches_plain_evaluator(g4, sig_r):
    table = {}
    values = [0, 1, 2, 3, 1, 2, 0, 3, 2]
    for (a, b), v in zip(itertools.product(("a", "b", "c"), repeat=2), values):
        table[(a, b)] = v
    s = Structure(chain=g4, sig=sig_r, domain=("a", "b", "c"), predicates={"R": table})
    grid = AssignmentGrid(s, ("x1", "x2"))
    sig = expand_with_truth_constants(sig_r, g4)
    for phi in qf_matrices(sig, g4.elements, ["x1", "x2"], 1)[:300]:
        vals = grid.values(phi)
        for asg in all_assignments(("x1", "x2"), s.domain):
            assert grid.value_at(vals, asg) == eval_formula(phi, s, asg)


def test_grid_fold_matches_quantifier(g4, sig_r):
    table = {p: (hash(p) % 4) for p in itertools.product(("a", "b"), repeat=2)}
    s = Structure(chain=g4, sig=sig_r, domain=("a", "b"), predicates={"R": table})
    grid = AssignmentGrid(s, ("x1", "x2"))
    matrix = parse_formula("R(x1,x2)", sig_r)
    folded = grid.fold(grid.values(matrix), "x2", FORALL)
    phi = parse_formula("forall x2. R(x1,x2)", sig_r)
    for d in s.domain:
        assert grid.value_at(folded, {"x1": d}) == eval_formula(phi, s, {"x1": d})


def test_ground_terms_nesting():
    sig = Signature(functions={"f": 1, "c": 0, "d": 0})
    terms = ground_terms(sig, ["c", "d"], term_depth=2)
    names = {t.name for t in terms}
    assert {"c", "d", "f"} <= names
    assert len(terms) == 6  # c, d, f(c), f(d), f(f(c)), f(f(d))


def test_enumerate_structures_counts(b2, sig_r):
    structures = list(enumerate_structures(sig_r, b2, 2))
    assert len(structures) == 2 + 2**4
    assert structures[0].domain == ("d0",)
    # canonical order: the first structure has the all-bottom table
    assert set(structures[0].predicates["R"].values()) == {0}


def test_enumerate_structures_with_constants(b2):
    sig = Signature(predicates={"P": 1}, functions={"c": 0})
    structures = list(enumerate_structures(sig, b2, 2))
    assert len(structures) == 2 * 1 + 4 * 2
    assert structures[0].functions["c"][()] == "d0"


def test_enumerate_structures_rejects_proper_functions(b2):
    sig = Signature(functions={"f": 1})
    with pytest.raises(SignatureError):
        list(enumerate_structures(sig, b2, 1))


def test_enumerate_structures_budget(g4, sig_r):
    with pytest.raises(BudgetError):
        list(enumerate_structures(sig_r, g4, 3, budget=1000))
