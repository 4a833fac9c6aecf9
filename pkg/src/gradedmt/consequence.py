"""Bounded semantic consequence and depth-bounded sentence equivalence.

Consequence over all models is not decidable in general; both checks
here quantify over finite, canonically enumerated candidate spaces and
say so in their results.
"""

from dataclasses import dataclass
from typing import Sequence

from .errors import ChainMismatchError, FormatError, SignatureError
from .generation import enumerate_structures, generate_sentences
from .semantics import Structure, eval_formula, is_model
from .syntax import Formula, Signature, is_sentence


@dataclass(frozen=True)
class ConsequenceResult:
    holds: bool
    countermodel: Structure | None
    structures_checked: int
    max_domain: int

    def __bool__(self):
        return self.holds


def bounded_consequence(
    theory: Sequence[Formula],
    phi: Formula,
    sig: Signature,
    chain,
    max_domain: int,
    budget: int | None = None,
) -> ConsequenceResult:
    """Check that every model of the theory with domain size <= max_domain
    satisfies phi; return the first countermodel in canonical order otherwise.
    """
    if max_domain < 1:
        raise FormatError("max_domain must be at least 1")
    for sentence in list(theory) + [phi]:
        if not is_sentence(sentence):
            raise FormatError("bounded consequence needs sentences")
    checked = 0
    for s in enumerate_structures(sig, chain, max_domain, budget=budget):
        checked += 1
        if not is_model(theory, s).ok:
            continue
        if eval_formula(phi, s) != chain.top:
            return ConsequenceResult(False, s, checked, max_domain)
    return ConsequenceResult(True, None, checked, max_domain)


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    separator: Formula | None
    sentences_checked: int
    depth: int

    def __bool__(self):
        return self.equal


def equiv_up_to_depth(
    s1: Structure,
    s2: Structure,
    depth: int,
    sig: Signature | None = None,
    num_vars: int | None = None,
    budget: int | None = None,
) -> EquivResult:
    """Compare which generated sentences of level <= depth the two
    structures satisfy (take the top value).

    This approximates elementary equivalence: two structures are
    reported equal when no generated sentence separates them.  The
    signature argument selects the sentence language, so the same pair
    can be compared over a base language and over an expansion with
    truth constants.
    """
    if s1.chain != s2.chain:
        raise ChainMismatchError("equivalence needs structures over one chain")
    if sig is None:
        if s1.sig != s2.sig:
            raise SignatureError("structures disagree on the signature; pass one explicitly")
        sig = s1.sig
    _require_subsignature(sig, s1.sig)
    _require_subsignature(sig, s2.sig)
    sentences = generate_sentences(
        sig, s1.chain.elements, depth, num_vars=num_vars, budget=budget
    )
    top = s1.chain.top
    for sentence in sentences:
        sat1 = eval_formula(sentence, s1) == top
        sat2 = eval_formula(sentence, s2) == top
        if sat1 != sat2:
            return EquivResult(False, sentence, len(sentences), depth)
    return EquivResult(True, None, len(sentences), depth)


def _require_subsignature(small: Signature, big: Signature) -> None:
    for name, arity in small.predicates.items():
        if big.predicates.get(name) != arity:
            raise SignatureError(f"predicate {name!r}/{arity} not interpreted")
    for name, arity in small.functions.items():
        if big.functions.get(name) != arity:
            raise SignatureError(f"function {name!r}/{arity} not interpreted")
