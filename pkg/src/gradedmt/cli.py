"""Command-line front end.

Every subcommand emits either a human-readable text report or a JSON
report with a fixed envelope (see schemas/report.schema.json).  Exit
codes: 0 clean, 1 when a violation, countermodel or failed check was
found, 2 for usage errors.  Reports are deterministic: the same seed and
inputs produce byte-identical output.  GRADEDMT_BUDGET overrides the
default search budget.
"""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import corpus
from .algebra import validate_chain
from .chains import check_tarski_vaught, normalize_chain, union_of_chain, validate_chain_of_structures
from .consequence import bounded_consequence, equiv_up_to_depth
from .diagrams import (
    DiagramBounds,
    build_diagram,
    cor1_sweep,
    diagram_embedding_equivalence,
    interpret_constants,
    models_diagram,
    render_diagram,
)
from .errors import GradedmtError, PreconditionError
from .files import (
    load_algebra,
    load_chain_file,
    load_structure,
    load_theory,
    save_structure,
    structure_to_dict,
)
from .morphisms import (
    enumerate_substructures,
    is_substructure,
    search_strong_embedding,
    search_strong_homomorphism,
)
from .parser import infer_signature, parse_formula, render_formula
from .preservation import (
    AmalgamInstance,
    FormulaBounds,
    implies_exists_n,
    reproduce_counterexample,
    search_amalgam,
    substructure_preservation_suite,
    union_preservation_suite,
    universal_consequences_bounded,
)
from .randomgen import roundtrip_suite
from .semantics import eval_formula
from .syntax import EXISTS, Signature, classify_prenex, expand_with_truth_constants, free_variables


def _emit(args, payload: dict, ok: bool, text_lines) -> int:
    envelope = {
        "tool": "gradedmt",
        "command": args.command,
        "ok": ok,
        "seed": getattr(args, "seed", None),
        "report": payload,
    }
    if args.format == "json":
        body = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    else:
        body = "\n".join(text_lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return 0 if ok else 1


def _structure_with_options(args, attr="structure"):
    s = load_structure(getattr(args, attr))
    if getattr(args, "truth_constants", False):
        s = replace(s, sig=expand_with_truth_constants(s.sig, s.chain))
    return s


def _parse_binds(binds):
    out = {}
    for item in binds or ():
        if "=" not in item:
            raise GradedmtError(f"--bind expects VAR=LABEL, got {item!r}")
        var, label = item.split("=", 1)
        out[var] = label
    return out


def _bounds_from(args) -> FormulaBounds:
    return FormulaBounds(
        matrix_depth=getattr(args, "matrix_depth", 1),
        num_vars=getattr(args, "num_vars", 2),
        max_candidates=getattr(args, "max_candidates", None),
    )


# --- subcommand handlers ---


def cmd_eval(args) -> int:
    s = _structure_with_options(args)
    phi = parse_formula(args.formula, s.sig)
    assignment = _parse_binds(args.bind)
    for var, label in assignment.items():
        if label not in s.domain:
            raise GradedmtError(f"--bind {var}={label}: {label!r} is not a domain element")
    loose = free_variables(phi) - set(assignment)
    if loose:
        raise GradedmtError(f"unbound variables {sorted(loose)}; use --bind")
    value = s.chain.label(eval_formula(phi, s, assignment))
    return _emit(args, {"value": value, "formula": render_formula(phi)}, True, [value])


def cmd_classify(args) -> int:
    sig = infer_signature(args.formula, licensed_labels=args.labels.split(",") if args.labels else ())
    cls = str(classify_prenex(parse_formula(args.formula, sig)))
    return _emit(args, {"prenex_class": cls}, True, [cls])


def cmd_check_sub(args) -> int:
    sub = load_structure(args.sub)
    sup = load_structure(getattr(args, "super"))
    rep = is_substructure(sub, sup)
    payload = {"substructure": rep.ok, "clause": rep.clause, "detail": rep.detail}
    lines = ["substructure" if rep.ok else f"not a substructure (clause {rep.clause}: {rep.detail})"]
    return _emit(args, payload, rep.ok, lines)


def cmd_enum_subs(args) -> int:
    s = load_structure(args.structure)
    domains = [list(sub.domain) for sub in enumerate_substructures(s, args.include_subalgebra_reducts)]
    payload = {"count": len(domains), "domains": domains}
    lines = [f"{len(domains)} substructures"] + [",".join(d) for d in domains]
    return _emit(args, payload, True, lines)


def cmd_find_hom(args) -> int:
    return _find_map(args, injective=False)


def cmd_find_embed(args) -> int:
    return _find_map(args, injective=True)


def _find_map(args, injective: bool) -> int:
    source = load_structure(args.source)
    target = load_structure(args.target)
    search = search_strong_embedding if injective else search_strong_homomorphism
    found = search(source, target, fix_algebra_identity=not args.free_algebra_map)
    if found is None:
        kind = "embedding" if injective else "homomorphism"
        return _emit(args, {"found": False}, False, [f"no strong {kind}"])
    payload = {
        "found": True,
        "domain_map": dict(sorted(found.domain_map.items())),
        "algebra_map": list(found.algebra_map.map),
    }
    lines = [f"{d} -> {found.domain_map[d]}" for d in source.domain]
    return _emit(args, payload, True, lines)


def cmd_diagram(args) -> int:
    s = load_structure(args.structure)
    bounds = DiagramBounds(
        term_depth=args.term_depth,
        connective_depth=args.connective_depth,
        quantifier_depth=args.quantifier_depth,
        num_vars=args.num_vars,
    )
    d = build_diagram(s, args.kind, bounds)
    text = render_diagram(d)
    payload = {
        "kind": d.kind,
        "entries": len(d.entries),
        "completeness": d.completeness,
        "theory": text,
    }
    return _emit(args, payload, True, [text.rstrip("\n")])


def cmd_check_diagram(args) -> int:
    source = load_structure(args.source)
    target = load_structure(args.target)
    bounds = DiagramBounds(
        term_depth=args.term_depth,
        connective_depth=args.connective_depth,
        quantifier_depth=args.quantifier_depth,
        num_vars=args.num_vars,
    )
    diagram = build_diagram(source, args.kind, bounds)
    if args.map:
        images = []
        mapping = _parse_binds(args.map.split(","))
        for name, element in zip(diagram.constants, source.domain):
            if element not in mapping:
                raise GradedmtError(f"--map misses source element {element!r}")
            images.append(mapping[element])
        expanded = interpret_constants(target, diagram, images)
        rep = models_diagram(expanded, diagram)
        payload = {"models": rep.ok}
        if not rep.ok:
            payload["failing"] = render_formula(rep.failing.sentence)
            payload["expected"] = source.chain.label(rep.failing.value)
            payload["actual"] = target.chain.label(rep.actual)
        return _emit(args, payload, rep.ok, [json.dumps(payload, sort_keys=True)])
    report = diagram_embedding_equivalence(source, target, args.kind, bounds, diagram=diagram)
    payload = {
        "diagram_side": report.diagram_side,
        "embedding_side": report.embedding_side,
        "agree": report.agree,
    }
    lines = [
        f"diagram side: {report.diagram_side}",
        f"embedding side: {report.embedding_side}",
        f"agree: {report.agree}",
    ]
    return _emit(args, payload, report.agree, lines)


def cmd_equiv(args) -> int:
    left = _structure_with_options(args, "left")
    right = _structure_with_options(args, "right")
    sig = left.sig
    res = equiv_up_to_depth(left, right, args.depth, sig=sig)
    payload = {
        "equivalent": res.equal,
        "depth": res.depth,
        "sentences_checked": res.sentences_checked,
        "separator": render_formula(res.separator) if res.separator else None,
    }
    lines = [
        f"equivalent to depth {args.depth}: {res.equal}"
        + (f" (separated by {payload['separator']})" if res.separator else "")
    ]
    return _emit(args, payload, res.equal, lines)


def cmd_union(args) -> int:
    members = load_chain_file(args.chain)
    if args.normalize:
        members = normalize_chain(members)
    chain = validate_chain_of_structures(members)
    union = union_of_chain(chain)
    if args.save:
        save_structure(union, args.save)
    payload = {"domain": list(union.domain), "members": len(members)}
    return _emit(args, payload, True, [f"union domain: {','.join(union.domain)}"])


def cmd_check_chain(args) -> int:
    members = load_chain_file(args.chain)
    if args.normalize:
        members = normalize_chain(members)
    chain = validate_chain_of_structures(members, elementary_depth=args.elementary_depth)
    tv = check_tarski_vaught(chain, depth=args.tv_depth, matrix_depth=args.matrix_depth)
    payload = {
        "members": len(members),
        "quantifier_free_ok": tv.quantifier_free_ok,
        "quantifier_free_checked": tv.quantifier_free_checked,
        "elementary_precheck_ok": tv.elementary_precheck_ok,
        "depth_ok": tv.depth_ok,
    }
    lines = [f"valid chain of {len(members)} structures",
             f"quantifier-free union clause: {'ok' if tv.quantifier_free_ok else 'VIOLATED'}"]
    if args.tv_depth is not None:
        lines.append(
            f"depth-{args.tv_depth} clause: precheck "
            f"{'ok' if tv.elementary_precheck_ok else 'failed (skipped)'}"
            + (f", values {'ok' if tv.depth_ok else 'VIOLATED'}" if tv.elementary_precheck_ok else "")
        )
    return _emit(args, payload, tv.ok, lines)


def cmd_implies_exists(args) -> int:
    left = _structure_with_options(args, "left")
    right = _structure_with_options(args, "right")
    params = tuple(args.params.split(",")) if args.params else ()
    rep = implies_exists_n(left, right, params, args.n, _bounds_from(args))
    payload = {
        "holds": rep.ok,
        "n": rep.n,
        "candidates_checked": rep.candidates_checked,
        "separator": render_formula(rep.separator) if rep.separator else None,
        "bounds": rep.bounds.as_dict(),
    }
    lines = [
        f"existential transfer (n={args.n}): {rep.ok}"
        + (f", separated by {payload['separator']}" if rep.separator else "")
    ]
    return _emit(args, payload, rep.ok, lines)


def cmd_amalgamate(args) -> int:
    left = _structure_with_options(args, "left")
    right = _structure_with_options(args, "right")
    common = load_structure(args.common) if args.common else None
    params = tuple(args.params.split(",")) if args.params else ()
    instance = AmalgamInstance(left=left, right=right, common=common, generators=params)
    try:
        result = search_amalgam(instance, args.n, args.max_size, args.depth, _bounds_from(args))
    except PreconditionError as err:
        payload = {"status": "precondition-failed", "separator": str(err)}
        return _emit(args, payload, False, [str(err)])
    if not result.found:
        payload = {"status": result.status, "candidates_tried": result.candidates_tried}
        return _emit(args, payload, False, ["no amalgam within bounds (inconclusive)"])
    if args.save:
        save_structure(result.amalgam, args.save)
    payload = {
        "status": "found",
        "size": result.amalgam.size,
        "domain": list(result.amalgam.domain),
        "left_map": dict(sorted(result.left_map.domain_map.items())),
        "right_inclusion": list(right.domain),
        "elementary_depth": result.elementary_depth,
        "candidates_tried": result.candidates_tried,
        "amalgam": structure_to_dict(result.amalgam),
    }
    lines = [
        f"amalgam of size {result.amalgam.size} found "
        f"(left embeds via {payload['left_map']}, right included, "
        f"elementary to depth {result.elementary_depth})"
    ]
    return _emit(args, payload, True, lines)


def cmd_consequence(args) -> int:
    chain = load_algebra(args.algebra)
    licensed = chain.elements if args.truth_constants else ()
    theory, sig = load_theory(args.theory, licensed_labels=licensed)
    phi = parse_formula(args.formula, sig)
    res = bounded_consequence(theory, phi, sig, chain, args.max_domain)
    payload = {
        "holds": res.holds,
        "max_domain": res.max_domain,
        "structures_checked": res.structures_checked,
        "countermodel": structure_to_dict(res.countermodel) if res.countermodel else None,
    }
    lines = [f"holds (bounded, domains <= {args.max_domain})" if res.holds else "countermodel found"]
    if res.countermodel is not None:
        lines.append(json.dumps(payload["countermodel"], sort_keys=True))
    return _emit(args, payload, res.holds, lines)


def cmd_universal_consequences(args) -> int:
    chain = load_algebra(args.algebra)
    licensed = chain.elements if args.truth_constants else ()
    theory, sig = load_theory(args.theory, licensed_labels=licensed)
    out = universal_consequences_bounded(theory, sig, chain, args.max_domain, _bounds_from(args))
    rendered = [render_formula(phi) for phi in out]
    payload = {"count": len(rendered), "sentences": rendered}
    return _emit(args, payload, True, rendered or ["(none)"])


def cmd_counterexample(args) -> int:
    rep = reproduce_counterexample(depth=args.depth)
    payload = rep.as_dict()
    lines = [
        f"value of (forall x) P(x): {rep.value_in_m} vs {rep.value_in_n}",
        f"base-language equivalence to depth {rep.base_equivalent_to_depth}: {rep.base_equivalence_holds}",
        f"{rep.expanded_sentence}: {rep.expanded_value_in_m} vs {rep.expanded_value_in_n}",
        f"substructures preserving the sentence: {rep.substructures_satisfying}/{rep.substructures_of_m}",
        f"verdict: {'reproduced' if rep.ok else 'FAILED'}",
    ]
    return _emit(args, payload, rep.ok, lines)


def _suite_los_tarski(args) -> dict:
    rep = substructure_preservation_suite(args.seed, args.instances)
    return rep.as_dict()


def _suite_negative_control(args) -> dict:
    rep = substructure_preservation_suite(
        args.seed, args.instances, lead=EXISTS, claim="exists(1)-negative-control"
    )
    out = rep.as_dict()
    # the control passes when violations DO occur
    out["ok"] = len(rep.violations) >= 1
    out["expected"] = "at least one violation"
    return out


def _suite_unions(args) -> dict:
    rep = union_preservation_suite(args.seed, args.instances)
    return rep.as_dict()


def _suite_cor1(args) -> dict:
    chain = corpus.godel3()
    rep = cor1_sweep(chain, Signature(predicates={"R": 2}), 2, 3)
    return {
        "claim": "diagram-embedding-equivalence",
        "instances": rep.instances,
        "agreements": rep.agreements,
        "both_true": rep.both_true,
        "both_false": rep.both_false,
        "ok": rep.ok,
    }


def _suite_roundtrip(args) -> dict:
    return roundtrip_suite(args.seed, args.instances)


def _suite_counterexample(args) -> dict:
    return reproduce_counterexample().as_dict()


def _suite_algebra(args) -> dict:
    from .algebra import derive_residuum

    results = {}
    ok = True
    for name in ("godel4", "lukasiewicz3", "bool2"):
        chain = getattr(corpus, name)()
        report = validate_chain(chain)
        derived = derive_residuum(chain.elements, chain.star)
        results[name] = {
            "valid": report.ok,
            "residuum_reproduced": derived == chain.implies,
        }
        ok = ok and report.ok and derived == chain.implies
    return {"claim": "algebra-soundness", "chains": results, "ok": ok}


def _suite_bounded_consequence(args) -> dict:
    chain = corpus.godel4()
    theory, sig = corpus.weighted_graph_theory()
    reversed_symmetry = parse_formula("forall x y . (R(y, x) -> R(x, y))", sig)
    entailed = bounded_consequence(theory, reversed_symmetry, sig, chain, 3)
    symmetry = [parse_formula("forall x y . (R(x, y) -> R(y, x))", sig)]
    irreflexivity = parse_formula("forall x . (R(x, x) -> val(0))", sig)
    refuted = bounded_consequence(symmetry, irreflexivity, sig, corpus.bool2(), 1)
    ok = entailed.holds and not refuted.holds and refuted.countermodel.size == 1
    return {
        "claim": "bounded-consequence",
        "reversed_symmetry_entailed_at_3": entailed.holds,
        "irreflexivity_refuted_with_size_1": (not refuted.holds)
        and refuted.countermodel.size == 1,
        "ok": ok,
    }


def _suite_amalgamation(args) -> dict:
    from .morphisms import induced_substructure

    p3 = corpus.path3()
    checks = {}
    trivial = AmalgamInstance(left=p3, right=p3, common=p3, generators=tuple(p3.domain))
    res = search_amalgam(trivial, 1, 3)
    checks["trivial_n1"] = res.found and _certificates_ok(res, p3, p3)
    growth = AmalgamInstance(left=corpus.edgeless3(), right=p3)
    res2 = search_amalgam(growth, 1, 4)
    checks["growth_n1"] = (
        res2.found and res2.amalgam.size == 4 and _certificates_ok(res2, corpus.edgeless3(), p3)
    )
    common1 = induced_substructure(p3, ["n0"])
    twin = AmalgamInstance(left=p3, right=p3, common=common1, generators=("n0",))
    res3 = search_amalgam(twin, 2, 3)
    checks["common_point_n2"] = res3.found and _certificates_ok(res3, p3, p3)
    m = corpus.structure_m()
    n = corpus.structure_n()
    sig_a = expand_with_truth_constants(m.sig, m.chain)
    m = replace(m, sig=sig_a)
    n = replace(n, sig=sig_a)
    try:
        search_amalgam(AmalgamInstance(left=m, right=n), 1, 3)
        checks["truth_constant_precondition_fails"] = False
    except PreconditionError as err:
        witness = err.witness
        checks["truth_constant_precondition_fails"] = (
            witness is not None
            and render_formula(witness.separator) == "exists x1 . P(x1) <-> val(3/4)"
        )
    return {
        "claim": "amalgamation-certificates",
        "checks": checks,
        "ok": all(checks.values()),
    }


def _certificates_ok(result, left, right) -> bool:
    from .morphisms import is_embedding, is_elementary_up_to_depth, is_substructure

    left_ok = is_embedding(result.left_map, left, result.amalgam).ok
    sub_ok = is_substructure(right, result.amalgam).ok
    elem_ok = is_elementary_up_to_depth(
        result.right_map, right, result.amalgam, result.elementary_depth
    ).ok
    return left_ok and sub_ok and elem_ok


_SUITES = {
    "los-tarski-lemma": _suite_los_tarski,
    "exists-negative-control": _suite_negative_control,
    "unions-chain-lemma": _suite_unions,
    "cor1-equivalence": _suite_cor1,
    "parser-roundtrip": _suite_roundtrip,
    "counterexample": _suite_counterexample,
    "algebra-soundness": _suite_algebra,
    "bounded-consequence": _suite_bounded_consequence,
    "amalgamation": _suite_amalgamation,
}


def cmd_verify(args) -> int:
    if args.suite not in _SUITES:
        raise GradedmtError(f"unknown suite {args.suite!r}; have {sorted(_SUITES)}")
    payload = _SUITES[args.suite](args)
    ok = bool(payload.get("ok"))
    lines = [f"suite {args.suite}: {'pass' if ok else 'FAIL'}"]
    for key, value in sorted(payload.items()):
        if key in ("claim", "ok", "violations", "sentences"):
            continue
        lines.append(f"  {key}: {value}")
    violations = payload.get("violations")
    if violations:
        lines.append(f"  violations: {len(violations)}")
    return _emit(args, payload, ok, lines)


# --- argument parsing ---


def _add_common(p, seed=False, bounds=False, out=True):
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="worker cap (current build runs sequentially)")
    if out:
        p.add_argument("--out", help="write the report to this path instead of stdout")
    if seed:
        p.add_argument("--seed", type=int, default=0)
    if bounds:
        p.add_argument("--matrix-depth", dest="matrix_depth", type=int, default=1)
        p.add_argument("--num-vars", dest="num_vars", type=int, default=2)
        p.add_argument("--max-candidates", dest="max_candidates", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedmt",
        description="Graded first-order model theory over finite chains",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula in a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--bind", action="append", metavar="VAR=LABEL")
    p.add_argument("--truth-constants", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("classify", help="prenex class of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--labels", default="", help="comma-separated licensed truth-constant labels")
    _add_common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("check-sub", help="substructure test")
    p.add_argument("--sub", required=True)
    p.add_argument("--super", required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_check_sub)

    p = sub.add_parser("enum-subs", help="enumerate substructures")
    p.add_argument("--structure", required=True)
    p.add_argument("--include-subalgebra-reducts", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_enum_subs)

    p = sub.add_parser("find-hom", help="search a strong homomorphism")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--free-algebra-map", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_find_hom)

    p = sub.add_parser("find-embed", help="search a strong embedding")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--free-algebra-map", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_find_embed)

    for name in ("diagram", "check-diagram"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')}")
        if name == "diagram":
            p.add_argument("--structure", required=True)
        else:
            p.add_argument("--source", required=True)
            p.add_argument("--target", required=True)
            p.add_argument("--map", help="comma-separated a=x interpretation of source elements")
        p.add_argument("--kind", choices=("diag", "eldiag"), default="diag")
        p.add_argument("--term-depth", dest="term_depth", type=int, default=0)
        p.add_argument("--connective-depth", dest="connective_depth", type=int, default=0)
        p.add_argument("--quantifier-depth", dest="quantifier_depth", type=int, default=1)
        p.add_argument("--num-vars", dest="num_vars", type=int, default=2)
        _add_common(p)
        p.set_defaults(handler=cmd_diagram if name == "diagram" else cmd_check_diagram)

    p = sub.add_parser("equiv", help="depth-bounded sentence equivalence")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--truth-constants", action="store_true")
    _add_common(p)
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("union", help="union of a chain file")
    p.add_argument("--chain", required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--save", help="write the union structure to this path")
    _add_common(p)
    p.set_defaults(handler=cmd_union)

    p = sub.add_parser("check-chain", help="validate a chain and its union clauses")
    p.add_argument("--chain", required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--elementary-depth", dest="elementary_depth", type=int, default=None)
    p.add_argument("--tv-depth", dest="tv_depth", type=int, default=None)
    p.add_argument("--matrix-depth", dest="matrix_depth", type=int, default=1)
    _add_common(p)
    p.set_defaults(handler=cmd_check_chain)

    p = sub.add_parser("implies-exists", help="bounded existential transfer")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--params", default="")
    p.add_argument("--truth-constants", action="store_true")
    _add_common(p, bounds=True)
    p.set_defaults(handler=cmd_implies_exists)

    p = sub.add_parser("amalgamate", help="bounded amalgam certificate search")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--common", default=None)
    p.add_argument("--params", default="")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--max-size", dest="max_size", type=int, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--truth-constants", action="store_true")
    p.add_argument("--save", help="write the amalgam structure to this path")
    _add_common(p, bounds=True)
    p.set_defaults(handler=cmd_amalgamate)

    p = sub.add_parser("consequence", help="bounded semantic consequence")
    p.add_argument("--theory", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--max-domain", dest="max_domain", type=int, required=True)
    p.add_argument("--truth-constants", action="store_true", default=True)
    _add_common(p)
    p.set_defaults(handler=cmd_consequence)

    p = sub.add_parser("universal-consequences", help="bounded universal consequences")
    p.add_argument("--theory", required=True)
    p.add_argument("--algebra", required=True)
    p.add_argument("--max-domain", dest="max_domain", type=int, required=True)
    p.add_argument("--truth-constants", action="store_true", default=True)
    _add_common(p, bounds=True)
    p.set_defaults(handler=cmd_universal_consequences)

    p = sub.add_parser("counterexample", help="reproduce the bundled separation example")
    p.add_argument("--depth", type=int, default=2)
    _add_common(p)
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--instances", type=int, default=50)
    _add_common(p, seed=True)
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 2 if err.code not in (0, None) else 0
    try:
        return args.handler(args)
    except GradedmtError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    except OSError as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
