"""Chains of structures, their unions, and union-value checks.

A chain is a list of structures over one algebra, each a literal
substructure of the next (nested domains with identical labels).  For a
finite chain the union coincides with the last member; it is still
assembled entry by entry and cross-checked, so an inconsistent input
cannot slip through.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import FormatError, GradedmtError
from .generation import AssignmentGrid, qf_matrices
from .morphisms import inclusion_map, is_elementary_up_to_depth, is_substructure
from .semantics import Structure, eval_formula
from .syntax import App


class ChainValidationError(GradedmtError):
    """The given list of structures is not a chain."""


@dataclass(frozen=True)
class StructureChain:
    members: tuple
    elementary_to_depth: int | None = None

    def __len__(self):
        return len(self.members)


def validate_chain_of_structures(
    members: Sequence[Structure], elementary_depth: int | None = None
) -> StructureChain:
    """Verify consecutive substructure inclusions (transitivity covers
    the rest); optionally certify each inclusion elementary to a depth."""
    if not members:
        raise FormatError("a chain needs at least one structure")
    for i in range(len(members) - 1):
        rep = is_substructure(members[i], members[i + 1])
        if not rep.ok:
            raise ChainValidationError(
                f"member {i} is not a substructure of member {i + 1}: "
                f"clause {rep.clause}, {rep.detail}"
            )
    verified_depth = None
    if elementary_depth is not None:
        for i in range(len(members) - 1):
            rep = is_elementary_up_to_depth(
                inclusion_map(members[i], members[i + 1]),
                members[i],
                members[i + 1],
                elementary_depth,
            )
            if not rep.ok:
                raise ChainValidationError(
                    f"inclusion of member {i} is not elementary to depth "
                    f"{elementary_depth}; separated by a generated formula"
                )
        verified_depth = elementary_depth
    return StructureChain(tuple(members), verified_depth)


def union_of_chain(chain: StructureChain) -> Structure:
    """Union domain with each table entry inherited from any member that
    contains the arguments; inconsistencies raise, though validation
    makes them unreachable."""
    members = chain.members
    first = members[0]
    domain: list[str] = []
    for member in members:
        for d in member.domain:
            if d not in domain:
                domain.append(d)
    predicates: dict = {name: {} for name in first.sig.predicates}
    functions: dict = {name: {} for name in first.sig.functions}
    for member in members:
        for name, table in member.predicates.items():
            for args, value in table.items():
                known = predicates[name].get(args)
                if known is None:
                    predicates[name][args] = value
                elif known != value:
                    raise GradedmtError(
                        f"inconsistent chain: {name}{args} is {known} and {value}"
                    )
        for name, table in member.functions.items():
            for args, value in table.items():
                known = functions[name].get(args)
                if known is None:
                    functions[name][args] = value
                elif known != value:
                    raise GradedmtError(
                        f"inconsistent chain: {name}{args} is {known!r} and {value!r}"
                    )
    return Structure(
        chain=first.chain,
        sig=first.sig,
        domain=tuple(domain),
        predicates=predicates,
        functions=functions,
        name="union",
    )


@dataclass
class TarskiVaughtReport:
    quantifier_free_ok: bool
    quantifier_free_checked: int
    qf_violations: list = field(default_factory=list)
    elementary_requested: int | None = None
    elementary_precheck_ok: bool | None = None
    depth_ok: bool | None = None
    depth_violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if not self.quantifier_free_ok:
            return False
        return self.depth_ok is not False


def check_tarski_vaught(
    chain: StructureChain,
    depth: int | None = None,
    matrix_depth: int = 1,
    num_vars: int = 2,
    budget: int | None = None,
) -> TarskiVaughtReport:
    """Union-value preservation for chain members.

    Part (a), always checked and exact: every generated quantifier-free
    formula takes the same value at member tuples in the member and in
    the union.  Part (b), only when the pairwise inclusions verify as
    elementary to `depth`: the same transport for all generated formulas
    of that depth.
    """
    union = union_of_chain(chain)
    variables = tuple(f"x{i}" for i in range(1, num_vars + 1))
    report = TarskiVaughtReport(True, 0, elementary_requested=depth)
    first_sig = chain.members[0].sig
    constant_terms = [App(c) for c in first_sig.constants()]
    matrices = qf_matrices(
        first_sig,
        chain.members[0].chain.elements,
        variables,
        matrix_depth,
        extra_terms=constant_terms,
        budget=budget,
    )
    union_grid = AssignmentGrid(union, variables)
    for index, member in enumerate(chain.members):
        grid = AssignmentGrid(member, variables)
        for phi in matrices:
            member_vals = grid.values(phi)
            union_vals = union_grid.values(phi)
            for tup in product(member.domain, repeat=num_vars):
                asg = dict(zip(variables, tup))
                report.quantifier_free_checked += 1
                a = grid.value_at(member_vals, asg)
                b = union_grid.value_at(union_vals, asg)
                if a != b:
                    direct = eval_formula(phi, member, asg)
                    direct_union = eval_formula(phi, union, asg)
                    assert direct == a and direct_union == b
                    report.qf_violations.append((index, phi, tup, a, b))
    report.quantifier_free_ok = not report.qf_violations
    if depth is None:
        return report
    precheck_ok = True
    for i in range(len(chain.members) - 1):
        rep = is_elementary_up_to_depth(
            inclusion_map(chain.members[i], chain.members[i + 1]),
            chain.members[i],
            chain.members[i + 1],
            depth,
            matrix_depth=matrix_depth,
            budget=budget,
        )
        if not rep.ok:
            precheck_ok = False
            break
    report.elementary_precheck_ok = precheck_ok
    if not precheck_ok:
        return report
    depth_ok = True
    for index, member in enumerate(chain.members):
        rep = is_elementary_up_to_depth(
            inclusion_map(member, union),
            member,
            union,
            depth,
            matrix_depth=matrix_depth,
            budget=budget,
        )
        if not rep.ok:
            depth_ok = False
            report.depth_violations.append((index, rep.separator, rep.params))
    report.depth_ok = depth_ok
    return report


def normalize_chain(members: Sequence[Structure], budget: int | None = None) -> list[Structure]:
    """Relabel domains so that consecutive embeddings become literal
    inclusions; fails when some consecutive pair has no strong embedding."""
    from .morphisms import search_strong_embedding

    if not members:
        raise FormatError("a chain needs at least one structure")
    out = [members[0]]
    for i in range(1, len(members)):
        previous = out[-1]
        current = members[i]
        found = search_strong_embedding(previous, current, budget=budget)
        if found is None:
            raise ChainValidationError(
                f"no strong embedding of member {i - 1} into member {i}"
            )
        # rename the embedded images back to the labels of the previous member
        reverse = {found.domain_map[d]: d for d in previous.domain}
        fresh: dict[str, str] = {}
        used = set(reverse.values())
        for d in current.domain:
            if d in reverse:
                fresh[d] = reverse[d]
            elif d in used:
                stem = f"{d}'"
                while stem in used or stem in current.domain:
                    stem += "'"
                fresh[d] = stem
                used.add(stem)
            else:
                fresh[d] = d
                used.add(d)
        out.append(current.rename_domain(fresh))
    return out
