"""Strong homomorphisms, embeddings, substructures and their searches.

A map between structures is a pair: an algebra map between the chains
and a domain map.  Claimed kinds are always re-verified, never trusted.
Searches run in a fixed candidate order so results are reproducible.
"""

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator, Mapping, Sequence

from .algebra import AlgebraMap, FiniteChain, identity_map, is_algebra_homomorphism
from .budget import check_budget
from .errors import ChainMismatchError, FormatError, SignatureError
from .generation import AssignmentGrid, elementary_family
from .semantics import Structure, eval_formula
from .syntax import Formula


@dataclass(frozen=True)
class StructureMap:
    """An algebra map plus a domain map, with an unverified kind claim."""

    algebra_map: AlgebraMap
    domain_map: Mapping[str, str]
    kind: str = "strong"
    depth: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "domain_map", dict(self.domain_map))

    def g(self, d: str) -> str:
        return self.domain_map[d]


def identity_structure_map(s: Structure) -> StructureMap:
    return StructureMap(identity_map(s.chain), {d: d for d in s.domain})


def inclusion_map(sub: Structure, sup: Structure) -> StructureMap:
    return StructureMap(identity_map(sub.chain), {d: d for d in sub.domain})


@dataclass(frozen=True)
class MapReport:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def _check_signatures_match(source: Structure, target: Structure) -> None:
    for name, arity in source.sig.predicates.items():
        if target.sig.predicates.get(name) != arity:
            raise SignatureError(f"target does not interpret predicate {name!r}/{arity}")
    for name, arity in source.sig.functions.items():
        if target.sig.functions.get(name) != arity:
            raise SignatureError(f"target does not interpret function {name!r}/{arity}")


def is_strong_homomorphism(m: StructureMap, source: Structure, target: Structure) -> MapReport:
    """Verify function commutation and transport of predicate values.

    The algebra map must be a chain homomorphism, the domain map total;
    for every function symbol g(F(d...)) must equal F(g(d)...), and for
    every predicate symbol f applied to the source value must give the
    target value at the mapped tuple.  Returns the first failing atom.
    """
    if m.algebra_map.source != source.chain or m.algebra_map.target != target.chain:
        raise ChainMismatchError("algebra map does not connect the two chains")
    _check_signatures_match(source, target)
    alg = is_algebra_homomorphism(m.algebra_map)
    if not alg.ok:
        return MapReport(False, "algebra map is not a homomorphism", alg.counterexample)
    g = m.domain_map
    missing = [d for d in source.domain if d not in g]
    if missing:
        return MapReport(False, f"domain map not total, missing {missing[0]!r}")
    out_of_range = [d for d in source.domain if g[d] not in target.domain]
    if out_of_range:
        return MapReport(False, f"domain map leaves the target domain at {out_of_range[0]!r}")
    f = m.algebra_map.map
    for name in sorted(source.sig.functions):
        table = source.functions[name]
        t_table = target.functions[name]
        for args, value in sorted(table.items()):
            mapped = tuple(g[a] for a in args)
            if g[value] != t_table[mapped]:
                return MapReport(
                    False,
                    "function commutation fails",
                    (name, args, g[value], t_table[mapped]),
                )
    for name in sorted(source.sig.predicates):
        table = source.predicates[name]
        t_table = target.predicates[name]
        for args, value in sorted(table.items()):
            mapped = tuple(g[a] for a in args)
            if f[value] != t_table[mapped]:
                return MapReport(
                    False,
                    "predicate value not transported",
                    (name, args, f[value], t_table[mapped]),
                )
    return MapReport(True)


def is_embedding(m: StructureMap, source: Structure, target: Structure) -> MapReport:
    """A strong homomorphism whose two component maps are injective."""
    strong = is_strong_homomorphism(m, source, target)
    if not strong.ok:
        return strong
    if not m.algebra_map.injective:
        return MapReport(False, "algebra map not injective")
    values = [m.domain_map[d] for d in source.domain]
    if len(set(values)) != len(values):
        return MapReport(False, "domain map not injective")
    return MapReport(True)


@dataclass(frozen=True)
class ElementarityReport:
    ok: bool
    depth: int
    separator: Formula | None = None
    params: tuple = ()
    formulas_checked: int = 0
    reason: str = ""

    def __bool__(self):
        return self.ok


def is_elementary_up_to_depth(
    m: StructureMap,
    source: Structure,
    target: Structure,
    depth: int,
    matrix_depth: int = 1,
    total_vars: int | None = None,
    budget: int | None = None,
) -> ElementarityReport:
    """Check value transport for the canonical prenex family to `depth`.

    Every generated formula with up to `depth` quantifier blocks is
    evaluated at every source tuple; the algebra map applied to the
    source value must give the target value at the mapped tuple.  A
    connective applied on top of transported values transports again, so
    prenex shapes exhaust the obstructions at this depth.  Relational
    signatures with constants only.
    """
    strong = is_strong_homomorphism(m, source, target)
    if not strong.ok:
        return ElementarityReport(False, depth, reason=f"not a strong homomorphism: {strong.reason}")
    if not source.sig.is_relational_with_constants():
        raise SignatureError("elementarity checks need a relational-plus-constants signature")
    if total_vars is None:
        total_vars = depth + 1
    f = m.algebra_map.map
    g = m.domain_map
    labels = source.chain.elements
    constant_terms = _shared_constant_terms(source)
    checked = 0
    grid_vars = None
    grid_s: AssignmentGrid | None = None
    grid_t: AssignmentGrid | None = None
    for cand in elementary_family(
        source.sig,
        labels,
        depth,
        total_vars=total_vars,
        matrix_depth=matrix_depth,
        extra_terms=constant_terms,
        budget=budget,
    ):
        if grid_s is None:
            grid_vars = tuple(f"x{i}" for i in range(1, total_vars + 1))
            grid_s = AssignmentGrid(source, grid_vars)
            grid_t = AssignmentGrid(target, grid_vars)
        vals_s = grid_s.fold_prefix(grid_s.values(cand.matrix), cand.prefix)
        vals_t = grid_t.fold_prefix(grid_t.values(cand.matrix), cand.prefix)
        checked += 1
        for tup in product(source.domain, repeat=len(cand.params)):
            asg_s = dict(zip(cand.params, tup))
            asg_t = {p: g[d] for p, d in asg_s.items()}
            lhs = f[grid_s.value_at(vals_s, asg_s)]
            rhs = grid_t.value_at(vals_t, asg_t)
            if lhs != rhs:
                # replay with the plain evaluator before reporting
                direct = f[eval_formula(cand.formula, source, asg_s)]
                direct_t = eval_formula(cand.formula, target, asg_t)
                assert direct == lhs and direct_t == rhs, "grid and evaluator disagree"
                return ElementarityReport(
                    False, depth, separator=cand.formula, params=tup, formulas_checked=checked
                )
    return ElementarityReport(True, depth, formulas_checked=checked)


def _shared_constant_terms(source: Structure):
    from .syntax import App

    return [App(c) for c in source.sig.constants()]


# --- substructures ---


@dataclass(frozen=True)
class SubstructureReport:
    ok: bool
    clause: int = 0
    detail: str = ""

    def __bool__(self):
        return self.ok


def chain_is_subalgebra(sub: FiniteChain, sup: FiniteChain) -> bool:
    """Label-based subalgebra test: same endpoints, operations agree."""
    if sub == sup:
        return True
    try:
        positions = [sup.index(label) for label in sub.elements]
    except ChainMismatchError:
        return False
    if positions != sorted(positions):
        return False
    if positions[0] != sup.bottom or positions[-1] != sup.top:
        return False
    for i, pi in enumerate(positions):
        for j, pj in enumerate(positions):
            if sup.star[pi][pj] != positions[sub.star[i][j]]:
                return False
            if sup.implies[pi][pj] != positions[sub.implies[i][j]]:
                return False
    return True


def is_substructure(sub: Structure, sup: Structure) -> SubstructureReport:
    """Literal substructure test, one clause at a time.

    (1) the chain is a subalgebra, (2) the domain is included, (3)
    function tables agree on the subdomain, (4) predicate tables agree
    on the subdomain (compared through element labels).
    """
    if not chain_is_subalgebra(sub.chain, sup.chain):
        return SubstructureReport(False, 1, "chain is not a subalgebra")
    try:
        _check_signatures_match(sub, sup)
        _check_signatures_match(sup, sub)
    except SignatureError as err:
        return SubstructureReport(False, 0, str(err))
    missing = [d for d in sub.domain if d not in sup.domain]
    if missing:
        return SubstructureReport(False, 2, f"domain element {missing[0]!r} not in the superstructure")
    for name in sorted(sub.sig.functions):
        sup_table = sup.functions[name]
        for args, value in sorted(sub.functions[name].items()):
            if sup_table[args] != value:
                return SubstructureReport(
                    False, 3, f"function {name}{args} is {value!r} below, {sup_table[args]!r} above"
                )
    for name in sorted(sub.sig.predicates):
        sup_table = sup.predicates[name]
        for args, value in sorted(sub.predicates[name].items()):
            if sub.chain.label(value) != sup.chain.label(sup_table[args]):
                return SubstructureReport(
                    False,
                    4,
                    f"predicate {name}{args} is {sub.chain.label(value)!r} below, "
                    f"{sup.chain.label(sup_table[args])!r} above",
                )
    return SubstructureReport(True)


def induced_substructure(s: Structure, subset: Sequence[str]) -> Structure:
    """Restriction of every table to a function-closed domain subset."""
    sub = [d for d in s.domain if d in set(subset)]
    if not sub:
        raise FormatError("substructure domain must be nonempty")
    sub_set = set(sub)
    functions = {}
    for name, arity in s.sig.functions.items():
        table = {}
        for args in product(sub, repeat=arity):
            value = s.functions[name][args]
            if value not in sub_set:
                raise FormatError(f"subset not closed under function {name!r}")
            table[args] = value
        functions[name] = table
    predicates = {}
    for name, arity in s.sig.predicates.items():
        predicates[name] = {
            args: s.predicates[name][args] for args in product(sub, repeat=arity)
        }
    return Structure(
        chain=s.chain,
        sig=s.sig,
        domain=tuple(sub),
        predicates=predicates,
        functions=functions,
        name=f"{s.name}|{{{','.join(sub)}}}" if s.name else "",
    )


def _closed_subsets(s: Structure) -> Iterator[tuple[str, ...]]:
    dom = s.domain
    constants = {s.functions[c][()] for c in s.sig.constants()}
    proper = [(name, s.functions[name]) for name in s.sig.proper_functions()]
    for size in range(1, len(dom) + 1):
        for subset in combinations(dom, size):
            chosen = set(subset)
            if not constants <= chosen:
                continue
            closed = True
            for _, table in proper:
                for args, value in table.items():
                    if all(a in chosen for a in args) and value not in chosen:
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                yield subset


def enumerate_substructures(
    s: Structure, include_subalgebra_reducts: bool = False
) -> Iterator[Structure]:
    """All substructures of a finite structure, smallest domains first.

    Domain subsets must contain every constant and be closed under the
    functions.  The chain stays fixed by default; with
    include_subalgebra_reducts each proper subalgebra that contains all
    used predicate values is enumerated as well.
    """
    for subset in _closed_subsets(s):
        base = induced_substructure(s, subset)
        yield base
        if include_subalgebra_reducts:
            for sub_chain_indices in _proper_subalgebras(s.chain):
                reduct = _reduct_to_subalgebra(base, sub_chain_indices)
                if reduct is not None:
                    yield reduct


def _proper_subalgebras(chain: FiniteChain) -> list[tuple[int, ...]]:
    from .algebra import generated_subalgebra

    seen = set()
    out = []
    indices = range(chain.size)
    for size in range(0, chain.size):
        for seed in combinations(indices, size):
            closed = generated_subalgebra(chain, seed)
            if closed not in seen and len(closed) < chain.size:
                seen.add(closed)
                out.append(closed)
    return sorted(out, key=lambda t: (len(t), t))


def _reduct_to_subalgebra(s: Structure, indices: tuple[int, ...]) -> Structure | None:
    used = {v for table in s.predicates.values() for v in table.values()}
    if not used <= set(indices):
        return None
    sub_chain = s.chain.restrict(indices)
    remap = {old: new for new, old in enumerate(indices)}
    predicates = {
        name: {args: remap[v] for args, v in table.items()}
        for name, table in s.predicates.items()
    }
    return Structure(
        chain=sub_chain,
        sig=s.sig,
        domain=s.domain,
        predicates=predicates,
        functions=s.functions,
        name=s.name,
    )


# --- searches ---


def _fast_map_ok(f, g: dict, source: Structure, target: Structure) -> bool:
    """Strong-homomorphism conditions for a candidate, algebra part assumed."""
    for name, table in source.functions.items():
        t_table = target.functions[name]
        for args, value in table.items():
            if g[value] != t_table[tuple(g[a] for a in args)]:
                return False
    for name, table in source.predicates.items():
        t_table = target.predicates[name]
        for args, value in table.items():
            if f[value] != t_table[tuple(g[a] for a in args)]:
                return False
    return True


def _algebra_map_candidates(
    source: Structure, target: Structure, fix_algebra_identity: bool
) -> list[AlgebraMap]:
    if fix_algebra_identity:
        if source.chain != target.chain:
            raise ChainMismatchError("identity algebra map needs equal chains")
        return [identity_map(source.chain)]
    out = []
    ks, kt = source.chain.size, target.chain.size
    for mapping in product(range(kt), repeat=ks):
        m = AlgebraMap(source.chain, target.chain, mapping)
        if is_algebra_homomorphism(m).ok:
            out.append(m)
    return out


def _domain_candidates(
    source: Structure,
    target: Structure,
    injective: bool,
    agreement: Mapping[str, str] | None,
) -> Iterator[dict]:
    fixed = dict(agreement or {})
    free = [d for d in source.domain if d not in fixed]
    if injective:
        taken = set(fixed.values())
        if len(taken) != len(fixed):
            return
        pool = [d for d in target.domain if d not in taken]
        for combo in permutations(pool, len(free)):
            yield {**fixed, **dict(zip(free, combo))}
    else:
        for combo in product(target.domain, repeat=len(free)):
            yield {**fixed, **dict(zip(free, combo))}


def _count_domain_candidates(source, target, injective, agreement) -> int:
    free = len([d for d in source.domain if d not in (agreement or {})])
    n = len(target.domain) - len(set((agreement or {}).values())) if injective else len(target.domain)
    if injective:
        count = 1
        for i in range(free):
            count *= max(n - i, 0)
        return count
    return len(target.domain) ** free


def search_structure_map(
    source: Structure,
    target: Structure,
    fix_algebra_identity: bool = True,
    injective: bool = False,
    agreement: Mapping[str, str] | None = None,
    extra_filter=None,
    budget: int | None = None,
) -> StructureMap | None:
    """First strong homomorphism (or embedding) in canonical order.

    Candidates are ordered by the source domain list against the target
    domain list; an optional agreement pins part of the domain map.
    `extra_filter(g) -> bool` can impose additional conditions.
    """
    _check_signatures_match(source, target)
    alg_candidates = _algebra_map_candidates(source, target, fix_algebra_identity)
    per_alg = _count_domain_candidates(source, target, injective, agreement)
    check_budget(per_alg * len(alg_candidates), "structure map search", budget)
    for alg in alg_candidates:
        f = alg.map
        if injective and not alg.injective:
            continue
        for g in _domain_candidates(source, target, injective, agreement):
            if not _fast_map_ok(f, g, source, target):
                continue
            if extra_filter is not None and not extra_filter(alg, g):
                continue
            kind = "embedding" if injective else "strong"
            return StructureMap(alg, g, kind=kind)
    return None


def search_strong_homomorphism(source, target, fix_algebra_identity=True, budget=None):
    return search_structure_map(
        source, target, fix_algebra_identity, injective=False, budget=budget
    )


def search_strong_embedding(
    source,
    target,
    fix_algebra_identity: bool = True,
    agreement: Mapping[str, str] | None = None,
    budget: int | None = None,
):
    return search_structure_map(
        source,
        target,
        fix_algebra_identity,
        injective=True,
        agreement=agreement,
        budget=budget,
    )


def compose_maps(first: StructureMap, second: StructureMap) -> StructureMap:
    """The composite map, applying `first` and then `second`."""
    if first.algebra_map.target != second.algebra_map.source:
        raise ChainMismatchError("algebra maps do not compose")
    algebra = AlgebraMap(
        first.algebra_map.source,
        second.algebra_map.target,
        tuple(second.algebra_map.map[v] for v in first.algebra_map.map),
    )
    domain = {d: second.domain_map[v] for d, v in first.domain_map.items()}
    return StructureMap(algebra, domain)
