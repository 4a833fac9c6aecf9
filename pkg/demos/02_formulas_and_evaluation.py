"""Formulas, structures, and many-valued evaluation.

Structures interpret predicates as tables of chain values, so a formula
evaluates to a chain element rather than a plain truth value.  Over a
finite domain the quantifiers are attained minima and maxima.
"""

import itertools

from gradedmt import (
    Signature,
    Structure,
    classify_prenex,
    corpus,
    eval_formula,
    expand_with_truth_constants,
    is_model,
    parse_formula,
    parse_theory,
    render_formula,
    satisfies,
)

g4 = corpus.godel4()
sig = Signature(predicates={"R": 2})

# The weighted-graph axioms: no self-loops (edge weight to the loop is
# bounded by 0) and symmetric weights.
theory = parse_theory(
    "forall x . (R(x, x) -> val(0))\n"
    "forall x y . (R(x, y) -> R(y, x))",
    sig,
)
for phi in theory:
    print(render_formula(phi), "|", classify_prenex(phi))

# A weighted graph on three vertices with graded edges.
dom = ("u", "v", "w")
weights = {("u", "v"): "3/4", ("v", "w"): "1/2", ("u", "w"): "1"}
table = {}
for a, b in itertools.product(dom, repeat=2):
    key = (a, b) if (a, b) in weights else (b, a)
    table[(a, b)] = g4.index(weights[key]) if key in weights else 0
graph = Structure(chain=g4, sig=sig, domain=dom, predicates={"R": table})
print("\nmodels the weighted-graph axioms:", is_model(theory, graph).ok)

# Evaluation returns graded values: the weakest edge out of u, say.
phi = parse_formula("forall y . (not (y ~ x) -> R(x, y))", sig)
for d in dom:
    value = eval_formula(phi, graph, {"x": d})
    print(f"every other vertex is linked to {d} to degree", g4.label(value))

# Truth constants make thresholds expressible.  The licensed labels come
# from an explicit signature expansion.
expanded = expand_with_truth_constants(sig, g4)
threshold = parse_formula("forall x y . (not (x ~ y) -> (val(1/2) -> R(x, y)))", expanded)
print("\nall edges have weight at least 1/2:", satisfies(threshold, graph))

# Function symbols work through tables too: the bundled divisible-group
# theory has a binary operation, an inverse and a unit.
group_theory, group_sig = corpus.fuzzy_subgroup_theory()
elements = tuple(str(i) for i in range(5))
mul = {(a, b): str((int(a) + int(b)) % 5) for a, b in itertools.product(elements, repeat=2)}
inv = {(a,): str((-int(a)) % 5) for a in elements}
group = Structure(
    chain=corpus.bool2(),
    sig=group_sig,
    domain=elements,
    predicates={"G": {(a,): 1 for a in elements}},
    functions={"mul": mul, "inv": inv, "e": {(): "0"}},
)
print("Z5 with the full fuzzy subgroup models the theory:", is_model(group_theory, group).ok)
