import itertools
import random

import pytest

from gradedmt.algebra import identity_map
from gradedmt.errors import ChainMismatchError
from gradedmt.generation import qf_matrices
from gradedmt.morphisms import (
    StructureMap,
    compose_maps,
    enumerate_substructures,
    identity_structure_map,
    inclusion_map,
    induced_substructure,
    is_elementary_up_to_depth,
    is_embedding,
    is_strong_homomorphism,
    is_substructure,
    search_strong_embedding,
    search_strong_homomorphism,
)
from gradedmt.semantics import Structure, all_assignments, eval_formula
from gradedmt.syntax import Signature
from tests.conftest import crisp_complete


def test_identity_is_strong_homomorphism(struct_m):
    m = identity_structure_map(struct_m)
    assert is_strong_homomorphism(m, struct_m, struct_m).ok
    assert is_embedding(m, struct_m, struct_m).ok


def test_value_mismatch_is_never_strong(struct_m, struct_n, g4):
    for g in ({"n0": "n0", "n1": "n1", "n2": "n2"}, {"n0": "n2", "n1": "n0", "n2": "n1"}):
        m = StructureMap(identity_map(g4), g)
        report = is_strong_homomorphism(m, struct_m, struct_n)
        assert not report.ok
        assert report.reason == "predicate value not transported"


def test_collapsing_equal_rows(g4, sig_p):
    s = Structure(
        chain=g4,
        sig=sig_p,
        domain=("a", "b"),
        predicates={"P": {("a",): 2, ("b",): 2}},
    )
    t = Structure(chain=g4, sig=sig_p, domain=("c",), predicates={"P": {("c",): 2}})
    collapse = StructureMap(identity_map(g4), {"a": "c", "b": "c"})
    assert is_strong_homomorphism(collapse, s, t).ok
    assert not is_embedding(collapse, s, t).ok


def test_function_commutation_checked(b2):
    sig = Signature(functions={"f": 1}, predicates={"P": 1})
    s = Structure(
        chain=b2,
        sig=sig,
        domain=("a", "b"),
        predicates={"P": {("a",): 1, ("b",): 1}},
        functions={"f": {("a",): "b", ("b",): "a"}},
    )
    t = Structure(
        chain=b2,
        sig=sig,
        domain=("a", "b"),
        predicates={"P": {("a",): 1, ("b",): 1}},
        functions={"f": {("a",): "a", ("b",): "b"}},
    )
    m = identity_structure_map(s)
    report = is_strong_homomorphism(m, s, t)
    assert not report.ok and report.reason == "function commutation fails"


def test_inclusion_of_induced_substructure_is_embedding(complete_graphs):
    k2, k3 = complete_graphs[2], complete_graphs[3]
    incl = inclusion_map(k2, k3)
    assert is_embedding(incl, k2, k3).ok


def test_chain_mismatch_raises(struct_m, b2, sig_p):
    other = Structure(chain=b2, sig=sig_p, domain=("a",), predicates={"P": {("a",): 1}})
    with pytest.raises(ChainMismatchError):
        is_strong_homomorphism(identity_structure_map(struct_m), struct_m, other)


def test_elementarity_identity(complete_graphs):
    k3 = complete_graphs[3]
    for depth in (1, 2):
        assert is_elementary_up_to_depth(identity_structure_map(k3), k3, k3, depth).ok


def test_k2_into_k3_not_elementary_at_depth_two(complete_graphs):
    k2, k3 = complete_graphs[2], complete_graphs[3]
    report = is_elementary_up_to_depth(inclusion_map(k2, k3), k2, k3, 2)
    assert not report.ok
    # replay the separator independently: the inclusion is the identity on
    # labels, so values must differ outright at the reported tuple
    from gradedmt.syntax import free_variables

    params = sorted(free_variables(report.separator))
    assignment = dict(zip(params, report.params))
    assert eval_formula(report.separator, k2, assignment) != eval_formula(
        report.separator, k3, assignment
    )


def test_constant_row_growth_is_elementary_from_size_three(g4, sig_p):
    big = Structure(
        chain=g4,
        sig=sig_p,
        domain=("a", "b", "c", "d"),
        predicates={"P": {(x,): 2 for x in "abcd"}},
    )
    mid = induced_substructure(big, ["a", "b", "c"])
    small = induced_substructure(big, ["a", "b"])
    assert is_elementary_up_to_depth(inclusion_map(mid, big), mid, big, 2).ok
    # one size lower, the counting formulas see the difference
    report = is_elementary_up_to_depth(inclusion_map(small, mid), small, mid, 2)
    assert not report.ok


def test_substructure_clauses(complete_graphs, g4, sig_r):
    k2, k3 = complete_graphs[2], complete_graphs[3]
    assert is_substructure(k3, k3).ok
    assert is_substructure(k2, k3).ok
    tweaked_tables = dict(k2.predicates["R"])
    tweaked_tables[("v0", "v1")] = g4.index("1/2")
    tweaked = Structure(
        chain=g4, sig=sig_r, domain=k2.domain, predicates={"R": tweaked_tables}
    )
    report = is_substructure(tweaked, k3)
    assert not report.ok and report.clause == 4
    disjoint = crisp_complete(g4, ["z0", "z1"])
    assert is_substructure(disjoint, k3).clause == 2


def test_substructure_iff_quantifier_free_agreement(g4, sig_r):
    # both directions of the quantifier-free characterization, on small cases
    rnd = random.Random(17)
    dom = ("a", "b", "c")
    matrices = qf_matrices(sig_r, g4.elements, ["x1", "x2"], 1)[:150]
    for _ in range(20):
        big_table = {p: rnd.randrange(4) for p in itertools.product(dom, repeat=2)}
        big = Structure(chain=g4, sig=sig_r, domain=dom, predicates={"R": big_table})
        small_table = {
            p: rnd.randrange(4) for p in itertools.product(("a", "b"), repeat=2)
        }
        small = Structure(
            chain=g4, sig=sig_r, domain=("a", "b"), predicates={"R": small_table}
        )
        agrees = all(
            eval_formula(phi, small, asg) == eval_formula(phi, big, asg)
            for phi in matrices
            for asg in all_assignments(("x1", "x2"), small.domain)
        )
        assert agrees == is_substructure(small, big).ok


def test_enumerate_substructures_triangle(complete_graphs):
    k3 = complete_graphs[3]
    subs = list(enumerate_substructures(k3))
    assert len(subs) == 7
    sizes = [s.size for s in subs]
    assert sizes == sorted(sizes)
    for s in subs:
        assert is_substructure(s, k3).ok


def test_enumerate_substructures_respects_constants(b2):
    sig = Signature(predicates={"P": 1}, functions={"c": 0})
    s = Structure(
        chain=b2,
        sig=sig,
        domain=("a", "b"),
        predicates={"P": {("a",): 1, ("b",): 0}},
        functions={"c": {(): "a"}},
    )
    domains = [sub.domain for sub in enumerate_substructures(s)]
    assert domains == [("a",), ("a", "b")]


def test_enumerate_substructures_function_cycle(b2):
    sig = Signature(predicates={"P": 1}, functions={"f": 1})
    s = Structure(
        chain=b2,
        sig=sig,
        domain=("a", "b", "c"),
        predicates={"P": {(x,): 1 for x in "abc"}},
        functions={"f": {("a",): "b", ("b",): "c", ("c",): "a"}},
    )
    assert [sub.domain for sub in enumerate_substructures(s)] == [("a", "b", "c")]


def test_subalgebra_reducts_flag(g4, sig_p):
    s = Structure(
        chain=g4,
        sig=sig_p,
        domain=("a",),
        predicates={"P": {("a",): g4.index("3/4")}},
    )
    plain = list(enumerate_substructures(s))
    with_reducts = list(enumerate_substructures(s, include_subalgebra_reducts=True))
    assert len(plain) == 1
    assert len(with_reducts) > 1
    for sub in with_reducts[1:]:
        assert sub.chain.size < g4.size
        assert sub.chain.label(sub.predicates["P"][("a",)]) == "3/4"


def test_search_embedding_examples(complete_graphs, struct_m, struct_n, g4, sig_p):
    k2, k3 = complete_graphs[2], complete_graphs[3]
    found = search_strong_embedding(k2, k3)
    assert found is not None
    assert is_embedding(found, k2, k3).ok
    one_m = Structure(chain=g4, sig=sig_p, domain=("a",), predicates={"P": {("a",): 2}})
    one_n = Structure(chain=g4, sig=sig_p, domain=("a",), predicates={"P": {("a",): 1}})
    assert search_strong_embedding(one_m, one_n) is None


def test_search_agrees_with_brute_force(g4, sig_r):
    # oracle: independent full enumeration of injective maps
    rnd = random.Random(29)
    dom_s, dom_t = ("a", "b"), ("u", "v", "w")
    for _ in range(25):
        s = Structure(
            chain=g4,
            sig=sig_r,
            domain=dom_s,
            predicates={"R": {p: rnd.randrange(4) for p in itertools.product(dom_s, repeat=2)}},
        )
        t = Structure(
            chain=g4,
            sig=sig_r,
            domain=dom_t,
            predicates={"R": {p: rnd.randrange(4) for p in itertools.product(dom_t, repeat=2)}},
        )
        brute = None
        for images in itertools.permutations(dom_t, len(dom_s)):
            g = dict(zip(dom_s, images))
            if all(
                t.predicates["R"][(g[a], g[b])] == s.predicates["R"][(a, b)]
                for a in dom_s
                for b in dom_s
            ):
                brute = g
                break
        found = search_strong_embedding(s, t)
        if brute is None:
            assert found is None
        else:
            assert found is not None and found.domain_map == brute


def test_search_homomorphism_allows_collapse(g4, sig_p):
    s = Structure(
        chain=g4, sig=sig_p, domain=("a", "b"), predicates={"P": {("a",): 2, ("b",): 2}}
    )
    t = Structure(chain=g4, sig=sig_p, domain=("c",), predicates={"P": {("c",): 2}})
    assert search_strong_embedding(s, t) is None
    hom = search_strong_homomorphism(s, t)
    assert hom is not None and hom.domain_map == {"a": "c", "b": "c"}


def test_search_with_free_algebra_map(g4, b2, sig_p):
    s = Structure(chain=g4, sig=sig_p, domain=("a",), predicates={"P": {("a",): 2}})
    t = Structure(chain=b2, sig=sig_p, domain=("u",), predicates={"P": {("u",): 1}})
    found = search_strong_homomorphism(s, t, fix_algebra_identity=False)
    assert found is not None
    assert found.algebra_map.map == (0, 1, 1, 1)


def test_composition_of_strong_homomorphisms(complete_graphs):
    k2, k3, k4 = complete_graphs[2], complete_graphs[3], complete_graphs[4]
    first = inclusion_map(k2, k3)
    second = inclusion_map(k3, k4)
    composite = compose_maps(first, second)
    assert is_strong_homomorphism(composite, k2, k4).ok
