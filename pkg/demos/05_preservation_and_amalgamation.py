"""Preservation suites, unions of chains, and amalgam certificates.

One-block universal sentences survive passage to substructures and
two-block universal sentences survive unions of chains; both facts are
checked here on randomized corpora, with an existential negative control
to show the harness is not vacuous.  The amalgamation statements are
exercised as bounded certificate searches whose outputs re-verify.
"""

from dataclasses import replace

from gradedmt import (
    AmalgamInstance,
    PreconditionError,
    check_tarski_vaught,
    corpus,
    expand_with_truth_constants,
    implies_exists_n,
    is_elementary_up_to_depth,
    is_embedding,
    render_formula,
    search_amalgam,
    substructure_preservation_suite,
    union_preservation_suite,
    validate_chain_of_structures,
)
from gradedmt.syntax import EXISTS

# Universal sentences never lose value 1 when passing to a substructure.
positive = substructure_preservation_suite(seed=7, instances=50)
print("universal suite:", positive.instances, "instances,",
      positive.checks, "checks,", len(positive.violations), "violations")

# Existential sentences do get lost, which keeps the harness honest.
control = substructure_preservation_suite(seed=7, instances=50, lead=EXISTS,
                                          claim="negative control")
print("existential control violations:", len(control.violations))
print("  e.g.", control.violations[0].as_dict() if control.violations else "-")

# Chains of structures and their unions: two-block universal sentences
# survive, and quantifier-free values at member tuples never move.
unions = union_preservation_suite(seed=11, instances=30)
print("\nunion suite:", unions.instances, "chains,", len(unions.violations), "violations")

# The quantifier-free clause can also be checked on a single chain file.
endpoint_chain = validate_chain_of_structures(
    [corpus.edgeless2(), corpus.edgeless3()]
)
tv = check_tarski_vaught(endpoint_chain)
print("quantifier-free union clause on edgeless 2 in 3:",
      tv.quantifier_free_ok, f"({tv.quantifier_free_checked} value comparisons)")

# Existential transfer and amalgam certificates.  The edgeless triple
# satisfies the same generated one-block existential sentences as the
# path, so a bounded amalgam search must succeed, and it does: it glues a
# fresh vertex onto the path and exhibits both certified maps.
triple, path = corpus.edgeless3(), corpus.path3()
flow = implies_exists_n(triple, path, (), 1)
print("\nexistential transfer triple -> path:", flow.ok)
result = search_amalgam(AmalgamInstance(left=triple, right=path), n=1, max_size=4)
print("amalgam found with domain:", result.amalgam.domain)
print("  left embeds via:", result.left_map.domain_map)
print("  embedding re-verifies:", is_embedding(result.left_map, triple, result.amalgam).ok)
print("  path inclusion elementary to depth 2:",
      is_elementary_up_to_depth(result.right_map, path, result.amalgam, 2).ok)

# With truth constants in the language the transfer becomes demanding:
# the constant-3/4 structure satisfies an existential sentence that the
# constant-1/2 structure cannot match, so the search refuses to start.
m, n = corpus.structure_m(), corpus.structure_n()
sig = expand_with_truth_constants(m.sig, m.chain)
m, n = replace(m, sig=sig), replace(n, sig=sig)
try:
    search_amalgam(AmalgamInstance(left=m, right=n), n=1, max_size=3)
except PreconditionError as err:
    print("\nprecondition fails, separated by:", render_formula(err.witness.separator))
