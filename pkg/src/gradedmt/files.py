"""JSON and theory-file loaders and serializers.

Algebra files: {"elements": [...], "star": [[...]], "implies": [[...]],
"extra_ops": {...}} with 0-based indices into "elements"; "implies" may
be omitted and is then derived.  Structure files reference their algebra
by relative path or carry it inline; predicate and function tables are
objects keyed by comma-joined argument labels (the empty string for
arity 0).  Theory files are newline-separated formulas with `#`
comments.  Chain files are JSON lists of structure paths.
"""

import json
from pathlib import Path
from typing import Mapping, Sequence

from .algebra import FiniteChain, chain_from_dict, validate_chain
from .errors import FormatError
from .parser import infer_signature, parse_theory
from .semantics import Structure
from .syntax import Formula, Signature


def _read_json(path: Path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise FormatError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise FormatError(f"{path}: invalid JSON at line {err.lineno}: {err.msg}")


def load_algebra(path) -> FiniteChain:
    from .errors import PreconditionError

    path = Path(path)
    try:
        chain = chain_from_dict(_read_json(path))
    except PreconditionError as err:
        raise FormatError(f"{path}: cannot derive a residuum: {err}")
    report = validate_chain(chain)
    if not report.ok:
        first = report.violations[0]
        raise FormatError(
            f"{path}: not a valid chain ({len(report.violations)} violations; first: {first})"
        )
    if not chain.name:
        chain = FiniteChain(
            chain.elements, chain.star, chain.implies, chain.extra_ops, name=path.stem
        )
    return chain


def algebra_to_dict(chain: FiniteChain) -> dict:
    out = {
        "elements": list(chain.elements),
        "star": [list(row) for row in chain.star],
        "implies": [list(row) for row in chain.implies],
    }
    if chain.name:
        out["name"] = chain.name
    if chain.extra_ops:
        def unfreeze(node):
            return [unfreeze(x) for x in node] if isinstance(node, tuple) else node

        out["extra_ops"] = {
            name: {"arity": op.arity, "table": unfreeze(op.table)}
            for name, op in chain.extra_ops.items()
        }
    return out


def save_algebra(chain: FiniteChain, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_dict(chain), indent=2) + "\n", encoding="utf-8")


def _split_key(key: str, arity: int, where: str) -> tuple:
    if arity == 0:
        if key != "":
            raise FormatError(f"{where}: nullary table key must be empty, got {key!r}")
        return ()
    parts = key.split(",")
    if len(parts) != arity:
        raise FormatError(f"{where}: key {key!r} does not have {arity} components")
    return tuple(parts)


def _join_key(args: tuple) -> str:
    for a in args:
        if "," in a:
            raise FormatError(f"label {a!r} contains a comma and cannot be serialized")
    return ",".join(args)


def load_structure(path, algebra: FiniteChain | None = None) -> Structure:
    """Load and validate a structure file.

    The algebra comes from the explicit argument, an inline object, or a
    path relative to the structure file, in that order of precedence.
    """
    path = Path(path)
    data = _read_json(path)
    if not isinstance(data, Mapping):
        raise FormatError(f"{path}: structure file must hold a JSON object")
    chain = algebra
    if chain is None:
        ref = data.get("algebra")
        if ref is None:
            raise FormatError(f"{path}: missing algebra reference")
        if isinstance(ref, str):
            chain = load_algebra(path.parent / ref)
        else:
            chain = chain_from_dict(ref)
            report = validate_chain(chain)
            if not report.ok:
                raise FormatError(f"{path}: inline algebra invalid: {report.violations[0]}")
    domain = tuple(str(d) for d in data.get("domain", ()))
    if not domain:
        raise FormatError(f"{path}: empty or missing domain")
    predicates_spec = data.get("predicates", {})
    functions_spec = data.get("functions", {})
    sig_preds = {}
    sig_funcs = {}
    predicates = {}
    functions = {}
    for name, spec in dict(predicates_spec).items():
        arity = int(spec.get("arity", -1))
        if arity < 0:
            raise FormatError(f"{path}: predicate {name!r} needs an arity")
        sig_preds[name] = arity
        table = {}
        for key, label in dict(spec.get("table", {})).items():
            args = _split_key(key, arity, f"{path}: predicate {name!r}")
            if not chain.has_label(str(label)):
                raise FormatError(
                    f"{path}: predicate {name!r} value {label!r} is not a chain element"
                )
            table[args] = chain.index(str(label))
        predicates[name] = table
    for name, spec in dict(functions_spec).items():
        arity = int(spec.get("arity", -1))
        if arity < 0:
            raise FormatError(f"{path}: function {name!r} needs an arity")
        sig_funcs[name] = arity
        table = {}
        for key, label in dict(spec.get("table", {})).items():
            args = _split_key(key, arity, f"{path}: function {name!r}")
            table[args] = str(label)
        functions[name] = table
    sig = Signature(predicates=sig_preds, functions=sig_funcs)
    try:
        return Structure(
            chain=chain,
            sig=sig,
            domain=domain,
            predicates=predicates,
            functions=functions,
            name=str(data.get("name", path.stem)),
        )
    except FormatError as err:
        raise FormatError(f"{path}: {err}")


def structure_to_dict(s: Structure, algebra_ref: str | None = None) -> dict:
    out: dict = {}
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    else:
        out["algebra"] = algebra_to_dict(s.chain)
    out["domain"] = list(s.domain)
    if s.name:
        out["name"] = s.name
    out["predicates"] = {
        name: {
            "arity": s.sig.predicates[name],
            "table": {
                _join_key(args): s.chain.label(v) for args, v in sorted(table.items())
            },
        }
        for name, table in sorted(s.predicates.items())
    }
    out["functions"] = {
        name: {
            "arity": s.sig.functions[name],
            "table": {_join_key(args): v for args, v in sorted(table.items())},
        }
        for name, table in sorted(s.functions.items())
    }
    return out


def save_structure(s: Structure, path, algebra_ref: str | None = None) -> None:
    Path(path).write_text(
        json.dumps(structure_to_dict(s, algebra_ref), indent=2) + "\n", encoding="utf-8"
    )


def load_theory(
    path, sig: Signature | None = None, licensed_labels: Sequence[str] = ()
) -> tuple[list[Formula], Signature]:
    """Parse a theory file; infer the signature when none is given."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise FormatError(f"cannot read {path}: {err}")
    if sig is None:
        sig = infer_signature(text, licensed_labels)
    return parse_theory(text, sig), sig


def save_theory(formulas: Sequence[Formula], path) -> None:
    from .parser import render_formula

    lines = [render_formula(phi) for phi in formulas]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_chain_file(path, algebra: FiniteChain | None = None) -> list[Structure]:
    """A chain file is a JSON list of structure paths, in order."""
    path = Path(path)
    entries = _read_json(path)
    if not isinstance(entries, list) or not all(isinstance(e, str) for e in entries):
        raise FormatError(f"{path}: chain file must be a JSON list of structure paths")
    return [load_structure(path.parent / entry, algebra=algebra) for entry in entries]
