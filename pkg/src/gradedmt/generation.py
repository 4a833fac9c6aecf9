"""Canonical formula families and bulk evaluation over assignment grids.

Two generators drive every bounded check in the package:

* an operation-count closure (`generate_sentences`) used for bounded
  sentence sets: level 0 holds literals, and a formula sits at level k
  when it is built by one connective from formulas whose levels sum to
  k - 1, or by one quantifier block over a level k - 1 formula;

* a prenex family (`qf_matrices` + `prenex_candidates`) used for
  fragment-bounded checks: quantifier-free matrices of bounded
  connective depth wrapped in alternating quantifier-block prefixes.

Both are deterministic, deduplicate structurally, and respect a search
budget.  `AssignmentGrid` evaluates a formula simultaneously at every
variable assignment, which keeps exhaustive sweeps cheap.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .budget import BudgetMeter, check_budget
from .errors import SignatureError
from .semantics import Structure, eval_term
from .syntax import (
    And,
    App,
    Atom,
    EXISTS,
    Eq,
    Exists,
    FORALL,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PrenexClass,
    Signature,
    Strong,
    Val,
    Var,
    exists_block,
    forall_block,
    free_variables,
    quantifier_free_class,
)

_CONNECTIVES = (And, Or, Strong, Implies, Iff)
_COMMUTATIVE = (And, Or, Strong, Iff)


def truth_constant_labels(sig: Signature, chain_labels: Sequence[str]) -> list[str]:
    """Truth-constant labels available to generators, in chain order.

    The endpoints are always available; other labels require a licence
    in the signature.
    """
    out = []
    last = len(chain_labels) - 1
    for i, label in enumerate(chain_labels):
        if i in (0, last) or label in sig.truth_constants:
            out.append(label)
    return out


def atoms_over(sig: Signature, terms: Sequence, labels: Sequence[str]) -> list[Formula]:
    """Canonical atom list: predicate atoms, identity atoms, truth constants."""
    pool = tuple(terms)
    out: list[Formula] = []
    for name in sorted(sig.predicates):
        arity = sig.predicates[name]
        for args in product(pool, repeat=arity):
            out.append(Atom(name, args))
    for left in pool:
        for right in pool:
            out.append(Eq(left, right))
    for label in labels:
        out.append(Val(label))
    return out


def literals_over(sig: Signature, terms: Sequence, labels: Sequence[str]) -> list[Formula]:
    atoms = atoms_over(sig, terms, labels)
    negated = [Not(a) for a in atoms if not isinstance(a, Val)]
    return atoms + negated


def _variable_subsets(names: Sequence[str]) -> Iterator[tuple[str, ...]]:
    ordered = list(names)
    for size in range(1, len(ordered) + 1):
        for picked in combinations(ordered, size):
            yield picked


class _LevelledPool:
    """Formulas bucketed by generation level, with structural dedup."""

    def __init__(self, what: str, budget: int | None):
        self.meter = BudgetMeter(what, budget)
        self.levels: list[list[tuple[Formula, frozenset]]] = []
        self.seen: set = set()

    def push(self, phi: Formula, level: int) -> bool:
        if phi in self.seen:
            return False
        self.seen.add(phi)
        self.meter.tick()
        while len(self.levels) <= level:
            self.levels.append([])
        self.levels[level].append((phi, frozenset(free_variables(phi))))
        return True

    def binary_combos(self, level: int, sink, closed_only: bool = False):
        """One connective over operands with level sum = level - 1.

        Commutative connectives are generated once per unordered pair.
        Order: level split ascending, left index, right index, then the
        connective order (and, or, strong, implies, iff).
        """
        for la in range(level):
            lb = level - 1 - la
            if lb >= len(self.levels) or la >= len(self.levels):
                continue
            left_bucket = self.levels[la]
            right_bucket = self.levels[lb]
            for i, (phi, fv_i) in enumerate(left_bucket):
                if closed_only and fv_i:
                    continue
                for j, (psi, fv_j) in enumerate(right_bucket):
                    if closed_only and fv_j:
                        continue
                    same = la == lb
                    for conn in _CONNECTIVES:
                        if conn in _COMMUTATIVE:
                            if la > lb:
                                continue
                            if same and j < i:
                                continue
                        sink(conn(phi, psi), level)


def generate_sentences(
    sig: Signature,
    chain_labels: Sequence[str],
    depth: int,
    num_vars: int | None = None,
    extra_terms: Sequence = (),
    budget: int | None = None,
) -> list[Formula]:
    """Closed formulas of generation level <= depth, in canonical order.

    Variables are x1..xd (d = num_vars, default depth).  At the final
    level only combinations that come out closed are produced, which
    keeps the sweep over sentences affordable.
    """
    if num_vars is None:
        num_vars = depth
    variables = [f"x{i}" for i in range(1, num_vars + 1)]
    labels = truth_constant_labels(sig, chain_labels)
    terms = [Var(v) for v in variables] + list(extra_terms)
    pool = _LevelledPool("sentence generation", budget)
    sentences: list[Formula] = []

    def push(phi: Formula, level: int):
        if pool.push(phi, level) and not free_variables(phi):
            sentences.append(phi)

    for lit in literals_over(sig, terms, labels):
        push(lit, 0)

    for level in range(1, depth + 1):
        final = level == depth
        if level - 1 >= len(pool.levels):
            break
        for phi, fv in list(pool.levels[level - 1]):
            if not fv:
                continue
            ordered = [v for v in variables if v in fv]
            for subset in _variable_subsets(ordered):
                if final and set(subset) != fv:
                    continue
                push(forall_block(subset, phi), level)
                push(exists_block(subset, phi), level)
        pool.binary_combos(level, push, closed_only=final)
    return sentences


# --- ground terms for diagram generation ---


def ground_terms(sig: Signature, constants: Iterable[str], term_depth: int = 0):
    """Closed terms over the given constants, nesting proper function
    symbols up to term_depth applications."""
    all_terms = [App(c) for c in sorted(constants)]
    for _ in range(term_depth):
        fresh = []
        for name in sorted(sig.functions):
            arity = sig.functions[name]
            if arity == 0:
                continue
            for args in product(all_terms, repeat=arity):
                t = App(name, args)
                if t not in all_terms and t not in fresh:
                    fresh.append(t)
        if not fresh:
            break
        all_terms.extend(fresh)
    return all_terms


# --- prenex families ---


@dataclass(frozen=True)
class PrenexCandidate:
    """A matrix with a quantifier-block prefix and free parameter slots."""

    formula: Formula
    matrix: Formula
    prefix: tuple  # ((kind, vars), ...) outermost first
    params: tuple  # free variable names, sorted
    lead: str | None
    blocks: int

    @property
    def prenex_class(self) -> PrenexClass:
        if self.blocks == 0:
            return quantifier_free_class()
        return PrenexClass(self.lead, self.blocks)


def qf_matrices(
    sig: Signature,
    chain_labels: Sequence[str],
    variables: Sequence[str],
    depth: int,
    extra_terms: Sequence = (),
    budget: int | None = None,
) -> list[Formula]:
    """Quantifier-free formulas over the variable pool, ops-count levels."""
    labels = truth_constant_labels(sig, chain_labels)
    terms = [Var(v) for v in variables] + list(extra_terms)
    pool = _LevelledPool("matrix generation", budget)
    out: list[Formula] = []

    def push(phi: Formula, level: int):
        if pool.push(phi, level):
            out.append(phi)

    for lit in literals_over(sig, terms, labels):
        push(lit, 0)
    for level in range(1, depth + 1):
        pool.binary_combos(level, push)
    return out


def _compositions(seq: Sequence[str], max_parts: int) -> Iterator[tuple[tuple[str, ...], ...]]:
    items = list(seq)
    n = len(items)
    for parts in range(1, min(max_parts, n) + 1):
        for cuts in combinations(range(1, n), parts - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(tuple(items[bounds[i]:bounds[i + 1]]) for i in range(parts))


def _other(kind: str) -> str:
    return EXISTS if kind == FORALL else FORALL


def prenex_candidates(
    matrices: Sequence[Formula],
    quantifiable: Sequence[str],
    target: PrenexClass,
) -> Iterator[PrenexCandidate]:
    """Wrap matrices in quantifier prefixes whose class fits within `target`.

    Every variable of `quantifiable` that occurs free in a matrix gets
    quantified; remaining free variables are parameter slots.  Pure
    parameter matrices are emitted once, as quantifier-free candidates.
    """
    for matrix in matrices:
        fv = free_variables(matrix)
        to_bind = [v for v in quantifiable if v in fv]
        params = tuple(sorted(fv - set(to_bind)))
        if not to_bind:
            cand = PrenexCandidate(matrix, matrix, (), params, None, 0)
            if cand.prenex_class.within(target):
                yield cand
            continue
        for lead in (FORALL, EXISTS):
            for comp in _compositions(to_bind, target.blocks):
                blocks = len(comp)
                if not PrenexClass(lead, blocks).within(target):
                    continue
                kinds = []
                kind = lead
                for _ in comp:
                    kinds.append(kind)
                    kind = _other(kind)
                phi = matrix
                for part_kind, part in reversed(list(zip(kinds, comp))):
                    builder = forall_block if part_kind == FORALL else exists_block
                    phi = builder(part, phi)
                yield PrenexCandidate(
                    phi, matrix, tuple(zip(kinds, comp)), params, lead, blocks
                )


def elementary_family(
    sig: Signature,
    chain_labels: Sequence[str],
    depth: int,
    total_vars: int | None = None,
    matrix_depth: int = 1,
    extra_terms: Sequence = (),
    budget: int | None = None,
) -> Iterator[PrenexCandidate]:
    """Prenex formulas with every split of the pool into parameters and
    quantified variables, used for depth-bounded elementarity checks.

    Connective moves above a quantifier cannot break value transport
    along an algebra-map pair, so checking prenex shapes exhausts the
    depth-d obstructions; only quantifier steps compare the two domains.
    """
    if total_vars is None:
        total_vars = depth + 1
    variables = [f"x{i}" for i in range(1, total_vars + 1)]
    matrices = qf_matrices(sig, chain_labels, variables, matrix_depth, extra_terms, budget)
    target = PrenexClass(FORALL, depth)
    seen: set = set()
    for n_params in range(0, total_vars + 1):
        quantifiable = variables[n_params:]
        for cand in prenex_candidates(matrices, quantifiable, target):
            if cand.blocks > depth:
                continue
            key = (cand.formula, cand.params)
            if key in seen:
                continue
            seen.add(key)
            yield cand
        # widen the target so EXISTS-led prefixes of full depth appear too
        for cand in prenex_candidates(matrices, quantifiable, PrenexClass(EXISTS, depth)):
            if cand.blocks > depth:
                continue
            key = (cand.formula, cand.params)
            if key in seen:
                continue
            seen.add(key)
            yield cand


# --- grid evaluation ---


class AssignmentGrid:
    """Values of formulas at every assignment of a fixed variable tuple.

    The grid for t variables over a domain of size m is a flat list of
    m**t chain indices, first variable most significant.  Quantifying a
    variable folds its axis and broadcasts the result so further
    combination stays aligned.
    """

    def __init__(self, structure: Structure, variables: Sequence[str]):
        self.structure = structure
        self.variables = tuple(variables)
        self.m = structure.size
        t = len(self.variables)
        self.size = self.m**t
        self.strides = {v: self.m ** (t - 1 - i) for i, v in enumerate(self.variables)}
        self._dom_pos = {d: i for i, d in enumerate(structure.domain)}
        self._cache: dict[Formula, list[int]] = {}

    def _term_column(self, term) -> list[str]:
        if isinstance(term, Var):
            stride = self.strides[term.name]
            dom = self.structure.domain
            return [dom[(idx // stride) % self.m] for idx in range(self.size)]
        value = eval_term(term, self.structure, {})
        return [value] * self.size

    def values(self, phi: Formula) -> list[int]:
        cached = self._cache.get(phi)
        if cached is not None:
            return cached
        out = self._compute(phi)
        self._cache[phi] = out
        return out

    def _compute(self, phi: Formula) -> list[int]:
        chain = self.structure.chain
        if isinstance(phi, Atom):
            table = self.structure.predicates[phi.name]
            cols = [self._term_column(t) for t in phi.args]
            return [table[tuple(col[i] for col in cols)] for i in range(self.size)]
        if isinstance(phi, Eq):
            lcol = self._term_column(phi.left)
            rcol = self._term_column(phi.right)
            top, bot = chain.top, chain.bottom
            return [top if lcol[i] == rcol[i] else bot for i in range(self.size)]
        if isinstance(phi, Val):
            from .semantics import _truth_constant_index

            v = _truth_constant_index(chain, phi.label)
            return [v] * self.size
        if isinstance(phi, Not):
            body = self.values(phi.body)
            row = [chain.implies[x][0] for x in range(chain.size)]
            return [row[x] for x in body]
        if isinstance(phi, And):
            a, b = self.values(phi.left), self.values(phi.right)
            return [x if x < y else y for x, y in zip(a, b)]
        if isinstance(phi, Or):
            a, b = self.values(phi.left), self.values(phi.right)
            return [x if x > y else y for x, y in zip(a, b)]
        if isinstance(phi, Strong):
            a, b = self.values(phi.left), self.values(phi.right)
            table = chain.star
            return [table[x][y] for x, y in zip(a, b)]
        if isinstance(phi, Implies):
            a, b = self.values(phi.left), self.values(phi.right)
            table = chain.implies
            return [table[x][y] for x, y in zip(a, b)]
        if isinstance(phi, Iff):
            a, b = self.values(phi.left), self.values(phi.right)
            table = chain.implies
            out = []
            for x, y in zip(a, b):
                fwd, bwd = table[x][y], table[y][x]
                out.append(fwd if fwd < bwd else bwd)
            return out
        if isinstance(phi, (Forall, Exists)):
            body = self.values(phi.body)
            kind = FORALL if isinstance(phi, Forall) else EXISTS
            return self.fold(body, phi.var, kind)
        raise TypeError(f"not a formula: {phi!r}")

    def fold(self, values: list[int], var: str, kind: str) -> list[int]:
        stride = self.strides[var]
        m = self.m
        out = values[:]
        pick = min if kind == FORALL else max
        for idx in range(self.size):
            if (idx // stride) % m == 0:
                folded = pick(values[idx + j * stride] for j in range(m))
                for j in range(m):
                    out[idx + j * stride] = folded
        return out

    def fold_prefix(self, matrix_values: list[int], prefix) -> list[int]:
        """Apply quantifier blocks, innermost first."""
        out = matrix_values
        for kind, part in reversed(prefix):
            for var in part:
                out = self.fold(out, var, kind)
        return out

    def value_at(self, values: list[int], assignment) -> int:
        idx = 0
        for v in self.variables:
            if v in assignment:
                idx += self._dom_pos[assignment[v]] * self.strides[v]
        return values[idx]


# --- structure enumeration ---


def enumerate_structures(
    sig: Signature,
    chain,
    max_size: int,
    label_prefix: str = "d",
    budget: int | None = None,
) -> Iterator[Structure]:
    """All structures with domains d0..d(m-1) for m = 1..max_size.

    The signature must be relational plus constants.  Constants vary in
    the outer position, predicate tables lexicographically inside, so
    the stream order is canonical and countermodels are deterministic.
    """
    if not sig.is_relational_with_constants():
        raise SignatureError(
            "structure enumeration needs a relational-plus-constants signature"
        )
    constants = sig.constants()
    pred_names = sorted(sig.predicates)
    k = chain.size
    total = 0
    for m in range(1, max_size + 1):
        cells = sum(m ** sig.predicates[p] for p in pred_names)
        total += (m ** len(constants)) * (k**cells)
    check_budget(total, "structure enumeration", budget)

    for m in range(1, max_size + 1):
        domain = tuple(f"{label_prefix}{i}" for i in range(m))
        slots = []
        for p in pred_names:
            for args in product(domain, repeat=sig.predicates[p]):
                slots.append((p, args))
        for const_values in product(domain, repeat=len(constants)):
            functions = {c: {(): v} for c, v in zip(constants, const_values)}
            for values in product(range(k), repeat=len(slots)):
                predicates: dict = {p: {} for p in pred_names}
                for (p, args), v in zip(slots, values):
                    predicates[p][args] = v
                yield Structure(
                    chain=chain,
                    sig=sig,
                    domain=domain,
                    predicates=predicates,
                    functions=functions,
                )
