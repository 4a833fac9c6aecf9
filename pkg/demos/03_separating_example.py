"""Why truth constants genuinely add axiomatic power.

Two structures with a constant unary predicate, one at 3/4 and one at
1/2, satisfy exactly the same generated base-language sentences (checked
exhaustively to depth 2).  Yet the class of structures whose expansion
satisfies `val(3/4) -> forall x. P(x)` is closed under substructures,
contains the first structure and misses the second, so no set of
base-language universal sentences can axiomatize it.
"""

from dataclasses import replace

from gradedmt import (
    corpus,
    enumerate_substructures,
    equiv_up_to_depth,
    eval_formula,
    expand_with_truth_constants,
    parse_formula,
    render_formula,
    reproduce_counterexample,
    satisfies,
)

m, n = corpus.structure_m(), corpus.structure_n()
chain = m.chain
forall_p = parse_formula("forall x . P(x)", m.sig)
print("value of (forall x) P(x):",
      chain.label(eval_formula(forall_p, m)), "in M,",
      chain.label(eval_formula(forall_p, n)), "in N")

# Base language: no generated depth-2 sentence tells M and N apart.
base = equiv_up_to_depth(m, n, 2, sig=m.sig)
print("base-language sentences checked:", base.sentences_checked, "-> equivalent:", base.equal)

# Expanded language: the threshold sentence separates them immediately.
sig_a = expand_with_truth_constants(m.sig, chain)
m_exp, n_exp = replace(m, sig=sig_a), replace(n, sig=sig_a)
sentence = parse_formula("val(3/4) -> forall x . P(x)", sig_a)
print("\n", render_formula(sentence))
print("  value in M's expansion:", chain.label(eval_formula(sentence, m_exp)))
print("  value in N's expansion:", chain.label(eval_formula(sentence, n_exp)))

expanded = equiv_up_to_depth(m_exp, n_exp, 2, sig=sig_a)
print("  first separator found by the generator:", render_formula(expanded.separator))

# The sentence survives passage to substructures, which is the point:
# the class it defines is substructure-closed but not base-axiomatizable.
subs = list(enumerate_substructures(m_exp))
print("\nsubstructures of M satisfying the sentence:",
      sum(satisfies(sentence, s) for s in subs), "of", len(subs))

report = reproduce_counterexample()
print("\nfull reproduction report ok:", report.ok)
