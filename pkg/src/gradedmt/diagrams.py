"""Named-constant expansions and diagrams of finite structures.

The diagram of a structure records, for each generated sentence over
fresh constants naming the domain, the exact value the sentence takes in
the named expansion.  A target structure models the diagram when some
interpretation of those constants reproduces every recorded value; for
quantifier-free diagrams over relational signatures this is equivalent
to the existence of a strong embedding, and that equivalence is checked
mechanically here.
"""

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Mapping, Sequence

from .budget import check_budget
from .errors import ChainMismatchError, FormatError, SignatureError
from .generation import atoms_over, generate_sentences, ground_terms
from .morphisms import is_elementary_up_to_depth, search_strong_embedding
from .semantics import Structure, eval_formula
from .syntax import (
    App,
    Atom,
    Eq,
    Formula,
    constant_name_for,
    expand_with_domain_constants,
)

DIAG = "diag"
ELDIAG = "eldiag"


def expansion_sharp(s: Structure) -> Structure:
    """Expand a structure with one constant per domain element, each
    naming itself."""
    sig = expand_with_domain_constants(s.sig, s.domain)
    functions = dict(s.functions)
    for label in s.domain:
        functions[constant_name_for(label)] = {(): label}
    return replace(s, sig=sig, functions=functions)


@dataclass(frozen=True)
class DiagramBounds:
    term_depth: int = 0
    connective_depth: int = 0
    quantifier_depth: int = 1
    num_vars: int = 2


@dataclass(frozen=True)
class DiagramEntry:
    sentence: Formula
    value: int


@dataclass(frozen=True)
class Diagram:
    kind: str
    constants: tuple  # constant names, domain order
    constant_elements: Mapping[str, str]
    entries: tuple
    bounds: DiagramBounds
    completeness: str
    chain_labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "constant_elements", dict(self.constant_elements))


def build_diagram(s: Structure, kind: str = DIAG, bounds: DiagramBounds = DiagramBounds()) -> Diagram:
    """Record exact sentence values in the named expansion of `s`.

    The quantifier-free part covers every atomic sentence over the fresh
    constants (ground terms up to bounds.term_depth when proper function
    symbols are present), optionally closed under connectives.  The
    elementary kind adds generated quantified sentences up to
    bounds.quantifier_depth.
    """
    if kind not in (DIAG, ELDIAG):
        raise FormatError(f"unknown diagram kind {kind!r}")
    sharp = expansion_sharp(s)
    constants = tuple(constant_name_for(d) for d in s.domain)
    terms = ground_terms(sharp.sig, constants, bounds.term_depth)
    atomic = atoms_over(s.sig, terms, labels=())
    entries: list[DiagramEntry] = []
    seen = set()

    def push(sentence: Formula):
        if sentence in seen:
            return
        seen.add(sentence)
        entries.append(DiagramEntry(sentence, eval_formula(sentence, sharp)))

    for atom in atomic:
        push(atom)
    completeness = "atomic"
    if bounds.connective_depth > 0:
        from .generation import qf_matrices

        for phi in qf_matrices(
            s.sig, s.chain.elements, [], bounds.connective_depth, extra_terms=terms
        ):
            push(phi)
        completeness = f"quantifier-free to depth {bounds.connective_depth}"
    if kind == ELDIAG:
        for phi in generate_sentences(
            sharp.sig,
            s.chain.elements,
            bounds.quantifier_depth,
            num_vars=bounds.num_vars,
            extra_terms=terms,
        ):
            push(phi)
        completeness += f"; quantified to depth {bounds.quantifier_depth}"
    return Diagram(
        kind=kind,
        constants=constants,
        constant_elements={constant_name_for(d): d for d in s.domain},
        entries=tuple(entries),
        bounds=bounds,
        completeness=completeness,
        chain_labels=s.chain.elements,
    )


@dataclass(frozen=True)
class DiagramCheck:
    ok: bool
    failing: DiagramEntry | None = None
    actual: int | None = None

    def __bool__(self):
        return self.ok


def models_diagram(t_expanded: Structure, diagram: Diagram) -> DiagramCheck:
    """Check each recorded sentence value in an expansion of the target."""
    for name in diagram.constants:
        if t_expanded.sig.functions.get(name) != 0:
            raise SignatureError(f"target does not interpret constant {name!r}")
    for entry in diagram.entries:
        actual = eval_formula(entry.sentence, t_expanded)
        if actual != entry.value:
            return DiagramCheck(False, entry, actual)
    return DiagramCheck(True)


def interpret_constants(t: Structure, diagram: Diagram, images: Sequence[str]) -> Structure:
    """Expand the target, sending the i-th diagram constant to images[i]."""
    if len(images) != len(diagram.constants):
        raise FormatError("one image per diagram constant required")
    out = t
    for name, image in zip(diagram.constants, images):
        out = out.with_constant(name, image)
    return out


def render_diagram(diagram: Diagram) -> str:
    """Theory-file form: one `sentence <-> val(label)` line per entry."""
    from .parser import render_formula

    lines = [f"# {diagram.kind} diagram, {diagram.completeness}"]
    for entry in diagram.entries:
        label = diagram.chain_labels[entry.value]
        lines.append(f"({render_formula(entry.sentence)}) <-> val({label})")
    return "\n".join(lines) + "\n"


def _compile_atomic_entries(diagram: Diagram, source_positions: Mapping[str, int]):
    """Turn atomic entries into positional checks for the fast sweep.

    Returns (pred_checks, eq_checks, residue) where pred_checks are
    (name, arg positions, value) and eq_checks are (i, j, equal).
    """
    pred_checks = []
    eq_checks = []
    residue = []
    for entry in diagram.entries:
        phi = entry.sentence
        if isinstance(phi, Atom) and all(
            isinstance(a, App) and not a.args and a.name in source_positions for a in phi.args
        ):
            pred_checks.append(
                (phi.name, tuple(source_positions[a.name] for a in phi.args), entry.value)
            )
        elif (
            isinstance(phi, Eq)
            and isinstance(phi.left, App)
            and isinstance(phi.right, App)
            and not phi.left.args
            and not phi.right.args
            and phi.left.name in source_positions
            and phi.right.name in source_positions
        ):
            eq_checks.append(
                (
                    source_positions[phi.left.name],
                    source_positions[phi.right.name],
                    entry.value,
                )
            )
        else:
            residue.append(entry)
    return pred_checks, eq_checks, residue


def diagram_model_exists(
    target: Structure, diagram: Diagram, budget: int | None = None
) -> tuple[bool, tuple | None]:
    """Search all constant interpretations for one modelling the diagram.

    Returns (found, images).  Atomic entries are checked positionally;
    any non-atomic entries fall back to expansion plus evaluation.
    """
    positions = {name: i for i, name in enumerate(diagram.constants)}
    n = len(diagram.constants)
    check_budget(len(target.domain) ** n, "diagram interpretation sweep", budget)
    pred_checks, eq_checks, residue = _compile_atomic_entries(diagram, positions)
    top, bottom = target.chain.top, target.chain.bottom
    tables = target.predicates
    for images in product(target.domain, repeat=n):
        ok = True
        for i, j, value in eq_checks:
            same = images[i] == images[j]
            if (top if same else bottom) != value:
                ok = False
                break
        if not ok:
            continue
        for name, arg_pos, value in pred_checks:
            if tables[name][tuple(images[p] for p in arg_pos)] != value:
                ok = False
                break
        if not ok:
            continue
        if residue:
            expanded = interpret_constants(target, diagram, images)
            if not models_diagram(expanded, diagram).ok:
                continue
        return True, images
    return False, None


@dataclass(frozen=True)
class Cor1Report:
    diagram_side: bool
    embedding_side: bool
    agree: bool
    images: tuple | None = None
    embedding: object = None
    kind: str = DIAG
    depth: int | None = None


def diagram_embedding_equivalence(
    source: Structure,
    target: Structure,
    kind: str = DIAG,
    bounds: DiagramBounds = DiagramBounds(),
    budget: int | None = None,
    diagram: Diagram | None = None,
) -> Cor1Report:
    """Compare the two routes of the diagram characterization.

    The diagram side sweeps constant interpretations of the target; the
    embedding side searches for a strong embedding with the identity
    algebra map, additionally certified elementary to the quantifier
    depth for elementary diagrams.  The two booleans must agree on
    every finite instance.
    """
    if source.chain != target.chain:
        raise ChainMismatchError("both structures must share one chain")
    d = diagram if diagram is not None else build_diagram(source, kind, bounds)
    found, images = diagram_model_exists(target, d, budget=budget)
    if kind == DIAG:
        emb = search_strong_embedding(source, target, budget=budget)
        emb_ok = emb is not None
        depth = None
    else:
        emb = None
        for candidate in _embedding_candidates(source, target, budget):
            rep = is_elementary_up_to_depth(
                candidate, source, target, bounds.quantifier_depth
            )
            if rep.ok:
                emb = candidate
                break
        emb_ok = emb is not None
        depth = bounds.quantifier_depth
    return Cor1Report(
        diagram_side=found,
        embedding_side=emb_ok,
        agree=found == emb_ok,
        images=images,
        embedding=emb,
        kind=kind,
        depth=depth,
    )


def _embedding_candidates(source, target, budget):
    from itertools import permutations

    from .algebra import identity_map
    from .morphisms import StructureMap, _fast_map_ok

    check_budget(
        max(len(target.domain), 1) ** len(source.domain), "embedding candidates", budget
    )
    ident = identity_map(source.chain)
    f = ident.map
    for combo in permutations(target.domain, len(source.domain)):
        g = dict(zip(source.domain, combo))
        if _fast_map_ok(f, g, source, target):
            yield StructureMap(ident, g, kind="embedding")


@dataclass
class SweepReport:
    instances: int = 0
    agreements: int = 0
    disagreements: list = field(default_factory=list)
    both_true: int = 0
    both_false: int = 0

    @property
    def ok(self) -> bool:
        return not self.disagreements


def cor1_sweep(
    chain,
    sig,
    max_source_size: int,
    max_target_size: int,
    bounds: DiagramBounds = DiagramBounds(),
    budget: int | None = None,
) -> SweepReport:
    """Exhaustive check of the diagram characterization on small instances.

    Every source structure up to max_source_size is paired with every
    target up to max_target_size over the same chain and signature; the
    report counts agreements between the diagram and embedding sides.
    """
    from .generation import enumerate_structures
    from .morphisms import _fast_map_ok

    from itertools import permutations

    report = SweepReport()
    sources = list(enumerate_structures(sig, chain, max_source_size, budget=budget))
    targets = list(
        enumerate_structures(sig, chain, max_target_size, label_prefix="t", budget=budget)
    )
    check_budget(len(sources) * len(targets), "diagram sweep", budget)
    for source in sources:
        diagram = build_diagram(source, DIAG, bounds)
        positions = {name: i for i, name in enumerate(diagram.constants)}
        pred_checks, eq_checks, residue = _compile_atomic_entries(diagram, positions)
        if residue:
            raise FormatError("atomic diagram expected in the sweep")
        n = len(diagram.constants)
        f = tuple(range(chain.size))
        src_domain = source.domain
        for target in targets:
            top, bottom = chain.top, chain.bottom
            tables = target.predicates
            diagram_side = False
            for images in product(target.domain, repeat=n):
                ok = True
                for i, j, value in eq_checks:
                    if (top if images[i] == images[j] else bottom) != value:
                        ok = False
                        break
                if ok:
                    for name, arg_pos, value in pred_checks:
                        if tables[name][tuple(images[p] for p in arg_pos)] != value:
                            ok = False
                            break
                if ok:
                    diagram_side = True
                    break
            embedding_side = False
            for combo in permutations(target.domain, len(src_domain)):
                g = dict(zip(src_domain, combo))
                if _fast_map_ok(f, g, source, target):
                    embedding_side = True
                    break
            report.instances += 1
            if diagram_side == embedding_side:
                report.agreements += 1
                if diagram_side:
                    report.both_true += 1
                else:
                    report.both_false += 1
            else:
                report.disagreements.append((source, target, diagram_side, embedding_side))
    return report
