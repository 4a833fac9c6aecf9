import pytest

from gradedmt.algebra import (
    AlgebraMap,
    FiniteChain,
    derive_residuum,
    enumerate_mtl_chains,
    generated_subalgebra,
    godel_chain,
    is_algebra_homomorphism,
    lukasiewicz_chain,
    validate_chain,
)
from gradedmt.errors import FormatError, PreconditionError


def test_bundled_chains_validate(g4, l3, b2):
    for chain in (g4, l3, b2):
        assert validate_chain(chain).ok


def test_residuation_law_exhaustive(g4, l3, b2):
    for chain in (g4, l3, b2):
        k = chain.size
        for x in range(k):
            for y in range(k):
                for z in range(k):
                    assert (chain.star[x][z] <= y) == (z <= chain.implies[x][y])


def test_implies_self_and_bottom(g4, l3):
    for chain in (g4, l3):
        for x in range(chain.size):
            assert chain.implies[x][x] == chain.top
            assert chain.implies[0][x] == chain.top


def test_join_star_three_chain_fails():
    k = 3
    join = [[max(i, j) for j in range(k)] for i in range(k)]
    godel_implies = [[k - 1 if i <= j else j for j in range(k)] for i in range(k)]
    report = validate_chain(
        {"elements": ["0", "1/2", "1"], "star": join, "implies": godel_implies}
    )
    assert not report.ok
    axioms = {v.axiom for v in report.violations}
    assert "identity" in axioms
    assert any(v.axiom == "residuation" and v.witness == (0, 0, 1) for v in report.violations)


def test_malformed_tables_raise():
    with pytest.raises(FormatError):
        FiniteChain(("0", "1"), ((0,),), ((1, 1), (0, 1)))
    with pytest.raises(FormatError):
        FiniteChain(("0",), ((0,),), ((0,),))
    with pytest.raises(FormatError):
        validate_chain({"elements": ["0", "1"], "star": [[0, 0], [0, 5]]})


def test_derive_residuum_matches_stored(g4, l3, b2):
    for chain in (g4, l3, b2):
        assert derive_residuum(chain.elements, chain.star) == chain.implies


def test_derive_residuum_by_scan(g4):
    # independent oracle: max z with star(x, z) <= y, by direct scan
    for x in range(4):
        for y in range(4):
            expected = max(z for z in range(4) if g4.star[x][z] <= y)
            assert g4.implies[x][y] == expected
    assert g4.implies[g4.index("3/4")][g4.index("1/2")] == g4.index("1/2")


def test_derive_residuum_above_diagonal(g4, l3):
    for chain in (g4, l3):
        table = derive_residuum(chain.elements, chain.star)
        for x in range(chain.size):
            for y in range(x, chain.size):
                assert table[x][y] == chain.top


def test_luk_implies_half_to_zero(l3):
    assert l3.elements[l3.implies[1][0]] == "1/2"


def test_derive_residuum_precondition_witness():
    join = [[max(i, j) for j in range(3)] for i in range(3)]
    with pytest.raises(PreconditionError) as err:
        derive_residuum(("0", "1/2", "1"), join)
    assert err.value.witness is not None


def test_derived_residuum_revalidates():
    for k in (2, 3, 4):
        for chain in enumerate_mtl_chains(k):
            rebuilt = FiniteChain(
                chain.elements, chain.star, derive_residuum(chain.elements, chain.star)
            )
            assert validate_chain(rebuilt).ok


def test_generated_subalgebra(g4, b2):
    assert generated_subalgebra(g4, ["3/4"]) == (0, 2, 3)
    assert generated_subalgebra(g4, range(4)) == (0, 1, 2, 3)
    assert generated_subalgebra(b2, [0]) == (0, 1)


def test_generated_subalgebra_brute_oracle(g4, l3):
    # oracle: iterate closure over the seed directly
    for chain in (g4, l3):
        for seed in ([1], [2], [1, 2] if chain.size > 3 else [1]):
            got = set(generated_subalgebra(chain, seed))
            want = set(seed) | {0, chain.top}
            changed = True
            while changed:
                changed = False
                for x in list(want):
                    for y in list(want):
                        for v in (chain.star[x][y], chain.implies[x][y]):
                            if v not in want:
                                want.add(v)
                                changed = True
            assert got == want


def test_subalgebra_restriction_revalidates(g4):
    sub = g4.restrict(generated_subalgebra(g4, ["3/4"]))
    assert sub.elements == ("0", "3/4", "1")
    assert validate_chain(sub).ok


def test_coatom(g4, l3, b2):
    assert g4.label(g4.coatom) == "3/4"
    assert l3.label(l3.coatom) == "1/2"
    assert b2.label(b2.coatom) == "0"


def test_algebra_homomorphisms(g4, l3, b2):
    identity = AlgebraMap(g4, g4, (0, 1, 2, 3))
    assert is_algebra_homomorphism(identity).ok
    collapse = AlgebraMap(g4, b2, (0, 1, 1, 1))
    assert is_algebra_homomorphism(collapse).ok
    luk_collapse = AlgebraMap(l3, b2, (0, 1, 1))
    report = is_algebra_homomorphism(luk_collapse)
    assert not report.ok
    # the strong conjunction genuinely fails at (1/2, 1/2)
    assert l3.star[1][1] == 0 and b2.star[1][1] == 1
    assert report.counterexample is not None


def test_algebra_map_shape_errors(g4, b2):
    with pytest.raises(FormatError):
        AlgebraMap(g4, b2, (0, 1, 1))
    with pytest.raises(FormatError):
        AlgebraMap(g4, b2, (0, 1, 1, 9))


def test_enumerate_mtl_chains_counts():
    counts = {k: len(enumerate_mtl_chains(k)) for k in (2, 3, 4)}
    assert counts == {2: 1, 3: 2, 4: 6}
    for k in (2, 3, 4):
        for chain in enumerate_mtl_chains(k):
            assert validate_chain(chain).ok


def test_builders_are_valid():
    assert validate_chain(godel_chain(["0", "a", "b", "c", "1"])).ok
    assert validate_chain(lukasiewicz_chain(["0", "1/4", "1/2", "3/4", "1"])).ok


def test_extra_ops_shape_and_closure(g4):
    from gradedmt.algebra import Operation

    delta = Operation(1, [0, 0, 0, 3])
    chain = FiniteChain(g4.elements, g4.star, g4.implies, extra_ops={"delta": delta})
    assert validate_chain(chain).ok
    # closure iterates the extra operation as well
    assert generated_subalgebra(chain, ["3/4"]) == (0, 2, 3)
    with pytest.raises(FormatError):
        FiniteChain(g4.elements, g4.star, g4.implies, extra_ops={"bad": Operation(1, [0, 0])})
    with pytest.raises(FormatError):
        FiniteChain(g4.elements, g4.star, g4.implies, extra_ops={"bad": Operation(1, [0, 0, 0, 9])})


def test_extra_ops_file_roundtrip(tmp_path, g4):
    import json as _json

    from gradedmt.algebra import Operation, chain_from_dict
    from gradedmt.files import algebra_to_dict

    chain = FiniteChain(
        g4.elements, g4.star, g4.implies, extra_ops={"delta": Operation(1, [0, 0, 0, 3])}
    )
    blob = _json.loads(_json.dumps(algebra_to_dict(chain)))
    assert chain_from_dict(blob) == chain
