"""``famw``: command-line front end.

Exit codes: 0 when the check passes (or the command succeeds), 1 when a
check fails or a hypothesis does not hold, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import axioms, constructions as cons
from .cohomology import (
    cohomology,
    deformation_equivalent,
    extend_deformation,
    family_to_json,
    load_family,
    obstruction,
    prelie_slot,
    semi_classical_limit,
    verify_n_deformation,
    verify_orders,
)
from .exact import format_scalar, parse_scalar
from .model import (
    CheckReport,
    FamwError,
    PreconditionError,
    algebra_to_json,
    dual_representation,
    dumps,
    load_algebra,
    load_form,
    load_operator,
    load_representation,
    matrix_to_json,
    representation_to_json,
)

# Every --json payload validates against this schema.
REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "verdict", "exit_code"],
    "properties": {
        "command": {"enum": ["check", "construct", "cohomology", "deform"]},
        "verdict": {"enum": ["pass", "fail", "error"]},
        "exit_code": {"enum": [0, 1, 2]},
        "target": {"type": "string"},
        "identity": {"type": ["string", "null"]},
        "witness": {"type": ["array", "null"], "items": {"type": "integer"}},
        "witness_labels": {"type": ["array", "null"], "items": {"type": "string"}},
        "defect": {"type": ["array", "null"], "items": {"type": "string"}},
        "message": {"type": "string"},
        "output": {"type": ["string", "null"]},
        "dim": {"type": "integer"},
        "products": {"type": "array", "items": {"type": "string"}},
        "degree": {"type": "integer"},
        "cochain_dims": {"type": "array", "items": {"type": "integer"}},
        "ranks": {"type": "array", "items": {"type": "integer"}},
        "cohomology_dim": {"type": "integer"},
        "orders": {"type": "array", "items": {
            "type": "object", "required": ["order", "verdict"],
            "properties": {"order": {"type": "integer"}, "verdict": {"enum": ["pass", "fail"]},
                           "witness": {"type": ["array", "null"]}, "defect": {"type": ["array", "null"]}}}},
        "phi": {"type": ["array", "null"], "items": {"type": "array", "items": {"type": "string"}}},
    },
    "additionalProperties": False,
}

OPERATOR_PROPERTIES = {"derivation": "derivation", "rota-baxter": "rota_baxter",
                       "o-operator": "o_operator", "average": "average"}
FORM_PROPERTIES = {"invariant-symmetric": "invariant_symmetric", "connes-cyclic": "connes_cyclic",
                   "symplectic": "symplectic", "nondegenerate": "nondegenerate"}
REP_PROPERTIES = ("representation", "dual-representation", "prelie-representation")
CONSTRUCTIONS = ("sub-adjacent", "commutator", "symmetrize", "direct-sum", "tensor-product", "semidirect",
                 "derivation", "o-operator", "rb-pre-f", "avg-dual", "form-pre-f", "regular-rep", "dual-rep")


class UsageError(FamwError):
    pass


class Outcome:
    def __init__(self, code: int, text: str, payload: dict):
        self.code = code
        self.text = text
        self.payload = payload


def _slots(values, roles=None) -> dict | None:
    if not values:
        return None
    out = {}
    for v in values:
        if "=" in v:
            role, name = v.split("=", 1)
            out[role] = name
        elif roles is not None and len(roles) == 1:
            out[roles[0]] = v
        else:
            raise UsageError(f"--slot {v!r} is ambiguous here; use ROLE=NAME (roles: mul, bracket)")
    return out


def _fmt_vec(v) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def _report_outcome(command: str, target: str, rep: CheckReport, labels=None) -> Outcome:
    payload = {"command": command, "target": target, "verdict": rep.verdict, "exit_code": 0 if rep.passed else 1,
               "identity": rep.identity_name, "witness": None, "witness_labels": None, "defect": None}
    if rep.passed:
        return Outcome(0, f"PASS {target}", payload)
    lines = [f"FAIL {target}: {rep.identity_name}"]
    if rep.witness is not None:
        payload["witness"] = list(rep.witness)
        if labels is not None:
            payload["witness_labels"] = [labels[i] for i in rep.witness]
            lines.append("  witness: (" + ", ".join(payload["witness_labels"]) + ")")
        else:
            lines.append(f"  witness: {tuple(rep.witness)}")
    if rep.defect is not None:
        payload["defect"] = [format_scalar(x) for x in rep.defect]
        lines.append(f"  defect: {_fmt_vec(rep.defect)}")
    return Outcome(1, "\n".join(lines), payload)


def _rep_arg(a, spec: str | None, prelie: bool = False, slot: str | None = None):
    if spec is None or spec == "regular":
        if prelie:
            return cons.prelie_regular_representation(a, slot or prelie_slot(a))
        return cons.regular_representation(a)
    return load_representation(spec)


# -- commands ----------------------------------------------------------------------

def cmd_check(args) -> Outcome:
    what = args.what.lower().replace("_", "-")
    a = load_algebra(args.file)
    labels = list(a.basis)
    if what in OPERATOR_PROPERTIES:
        if not args.operator:
            raise UsageError(f"check {what} needs --operator")
        op = load_operator(args.operator)
        kind = OPERATOR_PROPERTIES[what]
        r = None
        if kind == "o_operator":
            r = _rep_arg(a, args.rep)
            labels = [f"v{i + 1}" for i in range(r.module_dim)]
        rep = axioms.check_operator(a, op, kind, r, _slots(args.slot, ("mul",) if kind == "derivation" else None))
    elif what in FORM_PROPERTIES:
        if not args.form:
            raise UsageError(f"check {what} needs --form")
        rep = axioms.check_form(a, load_form(args.form), FORM_PROPERTIES[what], _slots(args.slot))
    elif what in REP_PROPERTIES:
        if what == "prelie-representation":
            slot = _slots(args.slot, ("bracket",))
            name = (slot or {}).get("bracket") or prelie_slot(a)
            rep = axioms.check_prelie_representation(a, _rep_arg(a, args.rep, True, name), name)
        else:
            r = _rep_arg(a, args.rep)
            fn = axioms.check_representation if what == "representation" else axioms.check_dual_rep_condition
            rep = fn(a, r, _slots(args.slot))
    elif what == "homomorphism":
        if not (args.operator and args.target):
            raise UsageError("check homomorphism needs --operator and --target")
        rep = axioms.check_homomorphism(a, load_algebra(args.target), load_operator(args.operator))
    else:
        cls = axioms.normalize_class(what)
        rep = axioms.check_class(a, cls, _slots(args.slot, axioms.class_roles(cls)))
        what = cls
    return _report_outcome("check", what, rep, labels)


def _weight(text: str | None):
    if text is None:
        return 0
    if "," in text:
        return tuple(parse_scalar(x.strip()) for x in text.split(","))
    return parse_scalar(text.strip())


def cmd_construct(args) -> Outcome:
    kind = args.kind
    files = args.files
    need = 2 if kind in ("direct-sum", "tensor-product") else 1
    if len(files) != need:
        raise UsageError(f"construct {kind} takes {need} input file(s)")
    a = load_algebra(files[0])
    force = args.force

    def operator():
        if not args.operator:
            raise UsageError(f"construct {kind} needs --operator")
        return load_operator(args.operator)

    result = None
    if kind == "sub-adjacent":
        result = cons.sub_adjacent_f_manifold(a, _slots(args.slot), force=force)
    elif kind == "commutator":
        slot = (_slots(args.slot, ("bracket",)) or {}).get("bracket", "bracket")
        result = a.with_products(commutator=cons.commutator_bracket(a, slot))
    elif kind == "symmetrize":
        slot = (_slots(args.slot, ("mul",)) or {}).get("mul", "mul")
        result = a.with_products(symmetrized=cons.symmetrized_product(a, slot))
    elif kind == "direct-sum":
        result = cons.direct_sum(a, load_algebra(files[1]))
    elif kind == "tensor-product":
        result = cons.tensor_product(a, load_algebra(files[1]))
    elif kind == "semidirect":
        result = cons.semidirect_product(a, _rep_arg(a, args.rep), force=force)
    elif kind == "derivation":
        result = cons.derivation_induced(a, operator(), _weight(args.weight), force=force)
    elif kind == "o-operator":
        result = cons.o_operator_induced_pre_f(a, _rep_arg(a, args.rep), operator(), force=force)
    elif kind == "rb-pre-f":
        result = cons.rota_baxter_induced_pre_f(a, operator(), force=force)
    elif kind == "avg-dual":
        result = cons.average_induced_dual_pre_f(a, operator(), force=force)
    elif kind == "form-pre-f":
        if not args.form:
            raise UsageError("construct form-pre-f needs --form")
        result = cons.form_induced_pre_f(a, load_form(args.form), force=force)
    elif kind in ("regular-rep", "dual-rep"):
        r = cons.regular_representation(a) if kind == "regular-rep" else dual_representation(a, _rep_arg(a, args.rep))
        text = dumps(representation_to_json(r))
        return _emit(args, kind, text, {"dim": r.module_dim, "products": []},
                     f"representation on a {r.module_dim}-dim module")
    text = dumps(algebra_to_json(result))
    slots = sorted(result.products)
    return _emit(args, kind, text, {"dim": result.dim, "products": slots},
                 f"dim {result.dim}; products: {', '.join(slots) or 'none'}")


def _emit(args, kind, text, extra, summary) -> Outcome:
    payload = {"command": "construct", "target": kind, "verdict": "pass", "exit_code": 0,
               "output": args.output, **extra}
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return Outcome(0, f"{kind}: {summary}; wrote {args.output}", payload)
    return Outcome(0, text.rstrip("\n"), payload)


def cmd_cohomology(args) -> Outcome:
    a = load_algebra(args.file)
    slot = prelie_slot(a, (_slots(args.slot, ("bracket",)) or {}).get("bracket"))
    r = _rep_arg(a, args.rep, prelie=True, slot=slot)
    rep = cohomology(a, r, args.degree, slot)
    n = rep.degree
    dims = rep.cochain_dims
    lines = [f"C^{n - 1}: {dims[0]}", f"C^{n}: {dims[1]}", f"C^{n + 1}: {dims[2]}",
             f"rank d_{n - 1}: {rep.rank_in}", f"rank d_{n}: {rep.rank_out}", f"H^{n}: {rep.dimension}"]
    if n == 1:
        lines = lines[1:3] + lines[4:]
    payload = {"command": "cohomology", "target": str(args.file), "verdict": "pass", "exit_code": 0,
               "degree": n, "cochain_dims": list(dims), "ranks": [rep.rank_in, rep.rank_out],
               "cohomology_dim": rep.dimension}
    return Outcome(0, "\n".join(lines), payload)


def cmd_deform(args) -> Outcome:
    fam = load_family(args.family)
    base = {"command": "deform", "target": args.sub}
    if args.sub == "verify":
        head = verify_n_deformation(fam)
        orders = verify_orders(fam)
        lines, rows = [], []
        if head.identity_name in ("commutativity", "associativity") and not head.passed:
            lines.append(f"base: FAIL {head.identity_name} at {head.witness}")
        for k, rep in enumerate(orders):
            row = {"order": k, "verdict": rep.verdict, "witness": list(rep.witness) if rep.witness else None,
                   "defect": [format_scalar(x) for x in rep.defect] if rep.defect else None}
            rows.append(row)
            line = f"order {k}: {rep.verdict.upper()}"
            if not rep.passed:
                line += f" at {tuple(rep.witness)} defect {_fmt_vec(rep.defect)}"
            lines.append(line)
        code = 0 if head.passed else 1
        lines.append("PASS" if head.passed else "FAIL")
        return Outcome(code, "\n".join(lines), {**base, "verdict": head.verdict, "exit_code": code, "orders": rows})
    if args.sub == "extend":
        obstruction(fam)  # raises when the family does not verify
        psi = extend_deformation(fam, check=False)
        if psi is None:
            return Outcome(1, f"obstructed: the order-{fam.order} obstruction is not a coboundary",
                           {**base, "verdict": "fail", "exit_code": 1, "message": "obstructed"})
        ext = fam.extended(psi)
        check = verify_n_deformation(ext)
        if not check.passed:
            raise ArithmeticError("extension failed to verify")
        text = dumps(family_to_json(ext))
        return _emit_deform(args, base, text, f"extended to order {ext.order}")
    if args.sub == "limit":
        lim = semi_classical_limit(fam)
        return _emit_deform(args, base, dumps(algebra_to_json(lim)), "semi-classical limit")
    if args.sub == "equivalent":
        if not args.other:
            raise UsageError("deform equivalent needs a second family file")
        other = load_family(args.other)
        if other.base_algebra() != fam.base_algebra():
            raise UsageError("the two families have different base algebras")
        if fam.order < 1 or other.order < 1:
            raise UsageError("both families need mu_1")
        phi = deformation_equivalent(fam.base_algebra(), fam.mus[0], other.mus[0])
        if phi is None:
            return Outcome(1, "inequivalent", {**base, "verdict": "fail", "exit_code": 1, "phi": None})
        grid = matrix_to_json(phi.matrix)
        text = "equivalent\nphi:\n" + "\n".join("  [" + ", ".join(row) + "]" for row in grid)
        return Outcome(0, text, {**base, "verdict": "pass", "exit_code": 0, "phi": grid})
    raise UsageError(f"unknown deform subcommand {args.sub!r}")


def _emit_deform(args, base, text, summary) -> Outcome:
    payload = {**base, "verdict": "pass", "exit_code": 0, "output": args.output}
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return Outcome(0, f"{summary}; wrote {args.output}", payload)
    return Outcome(0, text.rstrip("\n"), payload)


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="famw", description="Exact checks and constructions for F-manifold "
                                "algebras, pre-Lie cohomology and deformations.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--slot", action="append", metavar="NAME|ROLE=NAME",
                        help="product slot to read (repeatable; roles are mul and bracket)")
        sp.add_argument("--json", action="store_true", help="machine-readable report")

    c = sub.add_parser("check", help="check an algebra class or a property")
    c.add_argument("what", help="class name (f-manifold, pre-lie, ...) or property "
                   "(derivation, rota-baxter, o-operator, average, invariant-symmetric, connes-cyclic, "
                   "symplectic, nondegenerate, representation, dual-representation, prelie-representation, "
                   "homomorphism)")
    c.add_argument("file")
    c.add_argument("--operator", metavar="PATH")
    c.add_argument("--form", metavar="PATH")
    c.add_argument("--rep", metavar="regular|PATH")
    c.add_argument("--target", metavar="PATH", help="codomain algebra for homomorphism")
    common(c)
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a new structure")
    k.add_argument("kind", choices=CONSTRUCTIONS)
    k.add_argument("files", nargs="+")
    k.add_argument("--operator", metavar="PATH")
    k.add_argument("--form", metavar="PATH")
    k.add_argument("--rep", metavar="regular|PATH")
    k.add_argument("--weight", metavar="Q|Q,Q,...", help="scalar or element weight for construct derivation")
    k.add_argument("--force", action="store_true", help="skip hypothesis checks")
    k.add_argument("-o", "--output", metavar="PATH")
    common(k)
    k.set_defaults(func=cmd_construct)

    h = sub.add_parser("cohomology", help="pre-Lie cohomology dimensions")
    h.add_argument("file")
    h.add_argument("--degree", type=int, default=2)
    h.add_argument("--rep", metavar="regular|PATH")
    common(h)
    h.set_defaults(func=cmd_cohomology)

    d = sub.add_parser("deform", help="pre-Lie deformations of a commutative associative algebra")
    d.add_argument("sub", choices=("verify", "extend", "limit", "equivalent"))
    d.add_argument("family")
    d.add_argument("other", nargs="?")
    d.add_argument("-o", "--output", metavar="PATH")
    common(d)
    d.set_defaults(func=cmd_deform)
    return p


def run(args) -> Outcome:
    try:
        return args.func(args)
    except PreconditionError as exc:
        payload = {"command": args.command, "verdict": "fail", "exit_code": 1, "message": str(exc)}
        rep = exc.report
        if rep is not None:
            payload["identity"] = rep.identity_name
            payload["witness"] = list(rep.witness) if rep.witness is not None else None
            payload["defect"] = [format_scalar(x) for x in rep.defect] if rep.defect is not None else None
        return Outcome(1, f"FAIL: {exc}", payload)
    except (FamwError, ValueError, LookupError, OSError, ArithmeticError) as exc:
        msg = f"no such file: {exc.filename}" if isinstance(exc, FileNotFoundError) else str(exc)
        return Outcome(2, f"error: {msg}", {"command": args.command, "verdict": "error", "exit_code": 2,
                                            "message": msg})


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return int(exc.code or 0)
    out = run(args)
    if args.json:
        sys.stdout.write(json.dumps(out.payload, indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    else:
        stream = sys.stderr if out.code == 2 else sys.stdout
        stream.write(out.text + "\n")
    return out.code


if __name__ == "__main__":
    sys.exit(main())
