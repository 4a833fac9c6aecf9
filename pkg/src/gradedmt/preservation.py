"""Preservation checks, bounded amalgamation, and the randomized suites.

The relation checked by `implies_exists_n` reads: every generated
existential sentence (with parameters) satisfied on the left is
satisfied on the right.  It is the hypothesis of both amalgam searches.
All relations here are bounded by formula-generation limits; the limits
travel with every report, and a search that runs out of room reports
inconclusive rather than claiming a refutation.
"""

import random
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Mapping, Sequence

from .algebra import enumerate_mtl_chains
from .budget import BudgetMeter
from .chains import StructureChain, check_tarski_vaught, union_of_chain, validate_chain_of_structures
from .errors import FormatError, PreconditionError, SignatureError
from .generation import (
    AssignmentGrid,
    enumerate_structures,
    prenex_candidates,
    qf_matrices,
)
from .morphisms import (
    StructureMap,
    enumerate_substructures,
    inclusion_map,
    induced_substructure,
    is_elementary_up_to_depth,
    is_substructure,
    search_structure_map,
)
from .parser import render_formula
from .semantics import Structure, eval_formula, satisfies
from .syntax import (
    EXISTS,
    FORALL,
    App,
    Formula,
    PrenexClass,
    Signature,
    free_variables,
    is_sentence,
)


@dataclass(frozen=True)
class FormulaBounds:
    """Generation limits for the bounded relations."""

    matrix_depth: int = 1
    num_vars: int = 2
    max_candidates: int | None = None
    budget: int | None = None

    def as_dict(self) -> dict:
        return {
            "matrix_depth": self.matrix_depth,
            "num_vars": self.num_vars,
            "max_candidates": self.max_candidates,
        }


@dataclass(frozen=True)
class ExistsFlowReport:
    ok: bool
    n: int
    separator: Formula | None
    params: tuple
    candidates_checked: int
    bounds: FormulaBounds

    def __bool__(self):
        return self.ok


def _exists_candidates(sig, chain_labels, params, n, bounds):
    qvars = [f"x{i}" for i in range(1, bounds.num_vars + 1)]
    pvars = [f"p{i}" for i in range(1, len(params) + 1)]
    constant_terms = [App(c) for c in sig.constants()]
    matrices = qf_matrices(
        sig,
        chain_labels,
        qvars + pvars,
        bounds.matrix_depth,
        extra_terms=constant_terms,
        budget=bounds.budget,
    )
    target = PrenexClass(EXISTS, n)
    return qvars, pvars, prenex_candidates(matrices, qvars, target)


def implies_exists_n(
    left: Structure,
    right: Structure,
    params: Sequence[str],
    n: int,
    bounds: FormulaBounds = FormulaBounds(),
) -> ExistsFlowReport:
    """Every generated existential sentence of up to n blocks satisfied
    by the left structure at the parameters must be satisfied by the
    right structure at the same parameters; first violation returned.
    """
    if left.chain != right.chain:
        raise FormatError("both structures must share one chain")
    for d in params:
        if d not in left.domain or d not in right.domain:
            raise FormatError(f"parameter {d!r} must lie in both domains")
    qvars, pvars, candidates = _exists_candidates(
        left.sig, left.chain.elements, params, n, bounds
    )
    all_vars = tuple(qvars + pvars)
    grid_left = AssignmentGrid(left, all_vars)
    grid_right = AssignmentGrid(right, all_vars)
    assignment = dict(zip(pvars, params))
    top = left.chain.top
    meter = BudgetMeter("existential transfer", bounds.budget)
    checked = 0
    for cand in candidates:
        if bounds.max_candidates is not None and checked >= bounds.max_candidates:
            break
        meter.tick()
        checked += 1
        lv = grid_left.fold_prefix(grid_left.values(cand.matrix), cand.prefix)
        if grid_left.value_at(lv, assignment) != top:
            continue
        rv = grid_right.fold_prefix(grid_right.values(cand.matrix), cand.prefix)
        if grid_right.value_at(rv, assignment) != top:
            relevant = {p: assignment[p] for p in cand.params}
            assert eval_formula(cand.formula, left, relevant) == top
            assert eval_formula(cand.formula, right, relevant) != top
            return ExistsFlowReport(
                False, n, cand.formula, tuple(assignment[p] for p in cand.params), checked, bounds
            )
    return ExistsFlowReport(True, n, None, (), checked, bounds)


# --- preservation reports and checkers ---


@dataclass
class PreservationViolation:
    instance: int
    formula: Formula
    context: str
    values: tuple

    def as_dict(self) -> dict:
        return {
            "instance": self.instance,
            "formula": render_formula(self.formula),
            "context": self.context,
            "values": list(self.values),
        }


@dataclass
class PreservationReport:
    claim: str
    seed: int | None = None
    instances: int = 0
    checks: int = 0
    bounds: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "seed": self.seed,
            "instances": self.instances,
            "checks": self.checks,
            "bounds": self.bounds,
            "violations": [v.as_dict() for v in self.violations],
            "ok": self.ok,
        }


def check_preserved_under_substructures(
    formulas: Sequence[Formula],
    corpus: Sequence[Structure],
    claim: str = "substructure-preservation",
) -> PreservationReport:
    """For each corpus structure, each substructure, each formula and
    each tuple from the substructure: satisfaction above must imply
    satisfaction below."""
    report = PreservationReport(claim=claim)
    for index, big in enumerate(corpus):
        report.instances += 1
        subs = list(enumerate_substructures(big))
        for phi in formulas:
            names = sorted(free_variables(phi))
            for small in subs:
                for tup in product(small.domain, repeat=len(names)):
                    report.checks += 1
                    if satisfies(phi, big, tup) and not satisfies(phi, small, tup):
                        report.violations.append(
                            PreservationViolation(
                                index,
                                phi,
                                f"substructure {small.domain} of {big.name or big.domain}",
                                tup,
                            )
                        )
    return report


def check_preserved_under_unions(
    formulas: Sequence[Formula],
    chains_corpus: Sequence[StructureChain],
    claim: str = "union-preservation",
) -> PreservationReport:
    """When a sentence holds in every member of a chain it must hold in
    the union; chains with a non-satisfying member are skipped."""
    report = PreservationReport(claim=claim)
    for index, chain in enumerate(chains_corpus):
        report.instances += 1
        union = union_of_chain(chain)
        for phi in formulas:
            if not is_sentence(phi):
                raise FormatError("union preservation checks sentences")
            if all(satisfies(phi, member) for member in chain.members):
                report.checks += 1
                if not satisfies(phi, union):
                    report.violations.append(
                        PreservationViolation(index, phi, "union of chain", ())
                    )
    return report


def universal_consequences_bounded(
    theory: Sequence[Formula],
    sig: Signature,
    chain,
    max_domain: int,
    bounds: FormulaBounds = FormulaBounds(),
) -> list[Formula]:
    """Generated universal sentences that hold in every bounded model of
    the theory.  Models are enumerated once and reused per sentence."""
    models = [
        s
        for s in enumerate_structures(sig, chain, max_domain, budget=bounds.budget)
        if all(satisfies(phi, s) for phi in theory)
    ]
    qvars = [f"x{i}" for i in range(1, bounds.num_vars + 1)]
    constant_terms = [App(c) for c in sig.constants()]
    matrices = qf_matrices(
        sig, chain.elements, qvars, bounds.matrix_depth, extra_terms=constant_terms,
        budget=bounds.budget,
    )
    out = []
    checked = 0
    for cand in prenex_candidates(matrices, qvars, PrenexClass(FORALL, 1)):
        if cand.lead != FORALL:
            continue
        if bounds.max_candidates is not None and checked >= bounds.max_candidates:
            break
        checked += 1
        if all(satisfies(cand.formula, s) for s in models):
            out.append(cand.formula)
    return out


# --- amalgamation ---


@dataclass(frozen=True)
class AmalgamInstance:
    """Left and right structures over one chain with an optional common
    part whose domain is generated by the listed elements."""

    left: Structure
    right: Structure
    common: Structure | None = None
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.left.chain != self.right.chain:
            raise FormatError("amalgam sides must share one chain")
        if self.common is None:
            if self.generators:
                raise FormatError("generators given without a common part")
            return
        for side in (self.left, self.right):
            rep = is_substructure(self.common, side)
            if not rep.ok:
                raise FormatError(f"common part is not a substructure: {rep.detail}")
        if not self.generators:
            raise FormatError("a common part needs generating elements")
        generated = _generated_domain(self.common, self.generators)
        if set(generated) != set(self.common.domain):
            raise FormatError(
                f"generators {self.generators} generate {generated}, "
                f"not the whole common domain"
            )

    @property
    def shared_labels(self) -> tuple:
        return tuple(self.common.domain) if self.common is not None else ()


def _generated_domain(s: Structure, seed: Sequence[str]) -> tuple:
    current = set(seed)
    for name in s.sig.constants():
        current.add(s.functions[name][()])
    if not current:
        return ()
    changed = True
    while changed:
        changed = False
        for name in s.sig.proper_functions():
            table = s.functions[name]
            for args, value in table.items():
                if all(a in current for a in args) and value not in current:
                    current.add(value)
                    changed = True
    return tuple(d for d in s.domain if d in current)


@dataclass
class AmalgamResult:
    status: str  # "found" | "none-within-bounds"
    amalgam: Structure | None = None
    left_map: StructureMap | None = None
    right_map: StructureMap | None = None
    candidates_tried: int = 0
    elementary_depth: int | None = None
    n: int = 1
    precondition: ExistsFlowReport | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def _fresh_labels(existing: Sequence[str], count: int) -> list[str]:
    out = []
    i = 0
    taken = set(existing)
    while len(out) < count:
        label = f"w{i}"
        if label not in taken:
            out.append(label)
            taken.add(label)
        i += 1
    return out


def _extensions_of(base: Structure, extra: int, budget_meter: BudgetMeter):
    """All structures extending `base` by `extra` fresh elements, predicate
    entries on new tuples enumerated lexicographically."""
    fresh = _fresh_labels(base.domain, extra)
    domain = tuple(base.domain) + tuple(fresh)
    k = base.chain.size
    slots = []
    for name in sorted(base.sig.predicates):
        arity = base.sig.predicates[name]
        for args in product(domain, repeat=arity):
            if any(a in fresh for a in args):
                slots.append((name, args))
    for values in product(range(k), repeat=len(slots)):
        budget_meter.tick()
        predicates = {name: dict(table) for name, table in base.predicates.items()}
        for (name, args), v in zip(slots, values):
            predicates[name][args] = v
        yield Structure(
            chain=base.chain,
            sig=base.sig,
            domain=domain,
            predicates=predicates,
            functions=base.functions,
            name="amalgam-candidate",
        )


def universal_transport_ok(
    g: Mapping[str, str],
    source: Structure,
    target: Structure,
    bounds: FormulaBounds,
) -> bool:
    """Generated one-block universal formulas with value top at a source
    tuple keep value top at the mapped tuple."""
    qvars = [f"x{i}" for i in range(1, bounds.num_vars + 1)]
    pvars = [f"p{i}" for i in range(1, bounds.num_vars + 1)]
    constant_terms = [App(c) for c in source.sig.constants()]
    matrices = qf_matrices(
        source.sig,
        source.chain.elements,
        qvars + pvars,
        bounds.matrix_depth,
        extra_terms=constant_terms,
        budget=bounds.budget,
    )
    all_vars = tuple(qvars + pvars)
    grid_s = AssignmentGrid(source, all_vars)
    grid_t = AssignmentGrid(target, all_vars)
    top = source.chain.top
    for cand in prenex_candidates(matrices, qvars, PrenexClass(FORALL, 1)):
        if cand.lead != FORALL:
            continue
        vs = grid_s.fold_prefix(grid_s.values(cand.matrix), cand.prefix)
        vt = grid_t.fold_prefix(grid_t.values(cand.matrix), cand.prefix)
        for tup in product(source.domain, repeat=len(cand.params)):
            asg_s = dict(zip(cand.params, tup))
            if grid_s.value_at(vs, asg_s) != top:
                continue
            asg_t = {p: g[d] for p, d in asg_s.items()}
            if grid_t.value_at(vt, asg_t) != top:
                return False
    return True


def search_amalgam(
    instance: AmalgamInstance,
    n: int,
    max_size: int,
    depth: int = 2,
    bounds: FormulaBounds = FormulaBounds(),
) -> AmalgamResult:
    """Bounded certificate search for the amalgamation statements.

    Verifies the existential-transfer precondition first (a failure is a
    precondition error carrying the separating sentence).  Candidates
    extend the right structure by fresh elements, smallest first; the
    left structure must embed strongly (for n = 2 additionally
    preserving generated one-block universal formulas), agreeing with
    the identity on the common part, and the right inclusion must verify
    as elementary to `depth`.  Exhausting the size bound is reported as
    inconclusive, never as a refutation.
    """
    if n not in (1, 2):
        raise FormatError("n must be 1 or 2")
    left, right = instance.left, instance.right
    if not left.sig.is_relational_with_constants():
        raise SignatureError("amalgam search needs relational-plus-constants signatures")
    pre = implies_exists_n(left, right, instance.shared_labels, n, bounds)
    if not pre.ok:
        raise PreconditionError(
            "existential transfer fails: "
            f"{render_formula(pre.separator)} holds on the left only",
            witness=pre,
        )
    if max_size < right.size:
        return AmalgamResult("none-within-bounds", n=n, precondition=pre)
    agreement = {d: d for d in instance.shared_labels}
    meter = BudgetMeter("amalgam candidates", bounds.budget)
    tried = 0
    for extra in range(0, max_size - right.size + 1):
        for candidate in _extensions_of(right, extra, meter):
            tried += 1
            extra_filter = None
            if n == 2:
                extra_filter = lambda alg, g: universal_transport_ok(
                    g, left, candidate, bounds
                )
            left_map = search_structure_map(
                left,
                candidate,
                fix_algebra_identity=True,
                injective=True,
                agreement=agreement,
                extra_filter=extra_filter,
                budget=bounds.budget,
            )
            if left_map is None:
                continue
            right_incl = inclusion_map(right, candidate)
            sub = is_substructure(right, candidate)
            elem = is_elementary_up_to_depth(
                right_incl, right, candidate, depth, matrix_depth=bounds.matrix_depth,
                budget=bounds.budget,
            )
            if sub.ok and elem.ok:
                return AmalgamResult(
                    "found",
                    amalgam=candidate,
                    left_map=left_map,
                    right_map=right_incl,
                    candidates_tried=tried,
                    elementary_depth=depth,
                    n=n,
                    precondition=pre,
                )
    return AmalgamResult("none-within-bounds", candidates_tried=tried, n=n, precondition=pre)


# --- the bundled counterexample ---


@dataclass
class CounterexampleReport:
    value_in_m: str
    value_in_n: str
    base_equivalent_to_depth: int
    base_equivalence_holds: bool
    expanded_sentence: str
    expanded_value_in_m: str
    expanded_value_in_n: str
    expanded_separator: str | None
    substructures_of_m: int
    substructures_satisfying: int
    swap_flips_direction: bool

    @property
    def ok(self) -> bool:
        return (
            self.value_in_m == "3/4"
            and self.value_in_n == "1/2"
            and self.base_equivalence_holds
            and self.expanded_value_in_m == "1"
            and self.expanded_value_in_n == "1/2"
            and self.substructures_of_m == self.substructures_satisfying
            and self.swap_flips_direction
        )

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        out["ok"] = self.ok
        return out


def reproduce_counterexample(depth: int = 2) -> CounterexampleReport:
    """Re-run the bundled separation between base-language and
    truth-constant axiomatizability on the constant-predicate pair.

    The two structures satisfy the same generated base-language
    sentences to the given depth, yet the truth-constant sentence
    val(3/4) -> (forall x) P(x) holds in one expansion and takes value
    1/2 in the other, and it is preserved under all substructures of the
    satisfying side.
    """
    from .consequence import equiv_up_to_depth
    from .corpus import structure_m, structure_n
    from .parser import parse_formula
    from .syntax import expand_with_truth_constants

    m = structure_m()
    n = structure_n()
    chain = m.chain
    base_sig = m.sig
    forall_p = parse_formula("forall x . P(x)", base_sig)
    value_m = chain.label(eval_formula(forall_p, m))
    value_n = chain.label(eval_formula(forall_p, n))
    equiv = equiv_up_to_depth(m, n, depth, sig=base_sig)
    expanded_sig = expand_with_truth_constants(base_sig, chain)
    sentence = parse_formula("val(3/4) -> forall x . P(x)", expanded_sig)
    m_exp = replace(m, sig=expanded_sig)
    n_exp = replace(n, sig=expanded_sig)
    exp_m = chain.label(eval_formula(sentence, m_exp))
    exp_n = chain.label(eval_formula(sentence, n_exp))
    expanded_equiv = equiv_up_to_depth(m_exp, n_exp, depth, sig=expanded_sig)
    subs = list(enumerate_substructures(m_exp))
    satisfying = sum(1 for s in subs if satisfies(sentence, s))
    swapped = parse_formula("val(1/2) -> forall x . P(x)", expanded_sig)
    swap_flips = satisfies(swapped, n_exp) and (
        eval_formula(swapped, m_exp) == chain.top
    ) and not satisfies(sentence, n_exp)
    # swapping the roles: the mirrored sentence holds in N's expansion and
    # in M's (3/4 >= 1/2 on this chain), while the original separates.
    return CounterexampleReport(
        value_in_m=value_m,
        value_in_n=value_n,
        base_equivalent_to_depth=depth,
        base_equivalence_holds=equiv.equal,
        expanded_sentence="val(3/4) -> forall x . P(x)",
        expanded_value_in_m=exp_m,
        expanded_value_in_n=exp_n,
        expanded_separator=(
            render_formula(expanded_equiv.separator) if expanded_equiv.separator else None
        ),
        substructures_of_m=len(subs),
        substructures_satisfying=satisfying,
        swap_flips_direction=swap_flips,
    )


# --- randomized suites ---

_CHAIN_POOL_CACHE: dict[int, list] = {}


def _chain_pool(max_size: int) -> list:
    chains = []
    for k in range(2, max_size + 1):
        if k not in _CHAIN_POOL_CACHE:
            _CHAIN_POOL_CACHE[k] = enumerate_mtl_chains(k)
        chains.extend(_CHAIN_POOL_CACHE[k])
    return chains


def _suite_signature() -> Signature:
    return Signature(predicates={"P": 1, "R": 2})


def _random_structure(rnd: random.Random, chain, sig: Signature, max_domain: int) -> Structure:
    size = rnd.randint(1, max_domain)
    domain = tuple(f"d{i}" for i in range(size))
    predicates = {}
    for name, arity in sig.predicates.items():
        predicates[name] = {
            args: rnd.randrange(chain.size) for args in product(domain, repeat=arity)
        }
    return Structure(chain=chain, sig=sig, domain=domain, predicates=predicates)


_SENTENCE_CACHE: dict = {}


def _suite_sentences(chain, lead: str, blocks: int, bounds: FormulaBounds, licensed: bool = True):
    key = (chain.elements, lead, blocks, bounds.matrix_depth, bounds.num_vars,
           bounds.max_candidates, licensed)
    if key in _SENTENCE_CACHE:
        return _SENTENCE_CACHE[key]
    sig = _suite_signature()
    if licensed:
        from .syntax import expand_with_truth_constants

        sig = expand_with_truth_constants(sig, chain)
    qvars = [f"x{i}" for i in range(1, bounds.num_vars + 1)]
    matrices = qf_matrices(sig, chain.elements, qvars, bounds.matrix_depth, budget=bounds.budget)
    out = []
    for cand in prenex_candidates(matrices, qvars, PrenexClass(lead, blocks)):
        if cand.lead != lead or cand.params:
            continue
        out.append(cand.formula)
        if bounds.max_candidates is not None and len(out) >= bounds.max_candidates:
            break
    _SENTENCE_CACHE[key] = out
    return out


def substructure_preservation_suite(
    seed: int,
    instances: int,
    lead: str = FORALL,
    blocks: int = 1,
    bounds: FormulaBounds = FormulaBounds(max_candidates=60),
    max_domain: int = 4,
    max_chain: int = 4,
    claim: str | None = None,
) -> PreservationReport:
    """Randomized check that generated one-block universal sentences are
    never lost when passing to a substructure.

    With lead=EXISTS the same harness serves as the negative control:
    existential sentences are expected to produce violations.
    """
    rnd = random.Random(seed)
    pool = _chain_pool(max_chain)
    sig = _suite_signature()
    report = PreservationReport(
        claim=claim or f"{lead.lower()}({blocks})-substructure-preservation",
        seed=seed,
        bounds={**bounds.as_dict(), "max_domain": max_domain, "max_chain": max_chain},
    )
    for index in range(instances):
        chain = rnd.choice(pool)
        big = _random_structure(rnd, chain, sig, max_domain)
        sentences = _suite_sentences(chain, lead, blocks, bounds)
        top = chain.top
        satisfied = [phi for phi in sentences if eval_formula(phi, big) == top]
        report.instances += 1
        for small in enumerate_substructures(big):
            if small.size == big.size:
                continue
            for phi in satisfied:
                report.checks += 1
                if eval_formula(phi, small) != top:
                    report.violations.append(
                        PreservationViolation(
                            index, phi, f"substructure {small.domain} of random instance", ()
                        )
                    )
    return report


def union_preservation_suite(
    seed: int,
    instances: int,
    length: int = 3,
    bounds: FormulaBounds = FormulaBounds(max_candidates=60),
    max_domain: int = 4,
    max_chain: int = 4,
    tv_matrix_depth: int = 1,
) -> PreservationReport:
    """Randomized check of two-block universal sentences along chains of
    structures, plus the exact quantifier-free union clause.
    """
    rnd = random.Random(seed)
    pool = _chain_pool(max_chain)
    sig = _suite_signature()
    report = PreservationReport(
        claim="forall(2)-union-preservation",
        seed=seed,
        bounds={**bounds.as_dict(), "length": length, "max_domain": max_domain},
    )
    for index in range(instances):
        chain = rnd.choice(pool)
        top_struct = _random_structure(rnd, chain, sig, max_domain)
        members = [top_struct]
        while len(members) < length:
            previous = members[0]
            size = rnd.randint(1, previous.size)
            subset = sorted(rnd.sample(range(previous.size), size))
            members.insert(0, induced_substructure(previous, [previous.domain[i] for i in subset]))
        structure_chain = validate_chain_of_structures(members)
        union = union_of_chain(structure_chain)
        sentences = _suite_sentences(chain, FORALL, 2, bounds)
        top = chain.top
        report.instances += 1
        for phi in sentences:
            if all(eval_formula(phi, member) == top for member in structure_chain.members):
                report.checks += 1
                if eval_formula(phi, union) != top:
                    report.violations.append(
                        PreservationViolation(index, phi, "union of random chain", ())
                    )
        tv = check_tarski_vaught(structure_chain, matrix_depth=tv_matrix_depth)
        report.checks += tv.quantifier_free_checked
        if not tv.quantifier_free_ok:
            for member_index, phi, tup, a, b in tv.qf_violations:
                report.violations.append(
                    PreservationViolation(
                        index,
                        phi,
                        f"quantifier-free union clause at member {member_index}",
                        tup + (chain.label(a), chain.label(b)),
                    )
                )
    return report
