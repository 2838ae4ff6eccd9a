"""Command-line interface: ``plw <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a counterexample or failed
precondition is found, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import families
from .checkers import CLASS_SIGNATURES, Claim, StructureBundle, check_class, check_claims, check_prl, check_wprl
from .derivations import derive_prci, derive_pri, lea_prl
from .enumeration import ENUMERABLE, EnumerationTask, enumerate_class, infer_orders
from .errors import BadParams, InputError, NoConsistentOrder, PlwError, UnknownBuiltin, UnknownClass, UnknownElement
from .fileformat import load_structure, serialize_structure
from .filters import (
    build_quotient,
    enumerate_filters,
    is_strong_filter,
    mp_closed,
    residuated_pair,
)
from .lattice import chain
from .report import (
    check_doc,
    derivation_doc,
    dumps,
    emit_report,
    enumeration_doc,
    export_dot,
    filters_doc,
    lattice_doc,
    quotient_doc,
    table_doc,
    theorems_doc,
)
from .theorems import resolve_ids, verify_theorems

OK, COUNTEREXAMPLE, INPUT_ERROR = 0, 1, 2


def _params(items: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise BadParams(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def resolve(source: str, params: Sequence[str] | None = None) -> StructureBundle:
    """A structure file path, a builtin name, or a figure name (lattice only)."""
    path = Path(source)
    if path.is_file():
        if params:
            raise BadParams("--param applies to builtins, not files")
        return load_structure(path)
    if source in families.FIGURES:
        return StructureBundle(source, families.figure(source))
    try:
        return families.builtin(source, _params(params))
    except UnknownBuiltin:
        if path.suffix == ".plw" or "/" in source:
            raise InputError(f"no such file: {source}") from None
        raise


def _out(text: str) -> None:
    sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------

def _claim_for(B: StructureBundle, tag: str, ops: str | None) -> Claim:
    if tag not in CLASS_SIGNATURES:
        raise UnknownClass(f"unknown class tag {tag!r}; known: {', '.join(CLASS_SIGNATURES)}")
    sig = CLASS_SIGNATURES[tag]
    if ops:
        operands = tuple(o.strip() for o in ops.split(","))
    else:
        claimed = [c for c in B.claims if c.tag == tag]
        if claimed:
            return claimed[0]
        binaries, unaries = list(B.ops), list(B.unaries)
        if sig.count("b") > len(binaries) or sig.count("u") > len(unaries):
            raise BadParams(f"{B.name} lacks operations for {tag}; pass --ops")
        bi, ui = iter(binaries), iter(unaries)
        operands = tuple(next(bi) if k == "b" else next(ui) for k in sig)
    if len(operands) != len(sig):
        raise BadParams(f"{tag} takes {len(sig)} operand(s)")
    for kind, o in zip(sig, operands):
        if o not in (B.ops if kind == "b" else B.unaries):
            raise BadParams(f"{B.name} has no {'binary' if kind == 'b' else 'unary'} operation {o!r}")
    return Claim(tag, operands)


def cmd_check(args) -> int:
    B = resolve(args.file, args.param)
    if args.cls:
        reports = [check_class(B, _claim_for(B, args.cls, args.ops))]
    else:
        if not B.claims:
            raise BadParams(f"{B.name} has no claims; pass --class")
        reports = check_claims(B)
    _out(emit_report(reports[0] if len(reports) == 1 else reports))
    return OK if all(r.passed for r in reports) else COUNTEREXAMPLE


def _binary(B: StructureBundle, name: str | None) -> str:
    if name:
        if name not in B.ops:
            raise BadParams(f"{B.name} has no operation {name!r}")
        return name
    if len(B.ops) != 1:
        raise BadParams(f"{B.name} has {len(B.ops)} operations; pass --op")
    return next(iter(B.ops))


def cmd_derive_imp(args) -> int:
    B = resolve(args.file, args.param)
    name = _binary(B, args.op)
    out = derive_pri(B.lattice, B.ops[name], empty_sup=args.empty_sup, require_tnorm=not args.unchecked)
    _out(dumps(derivation_doc(B, name, out, "derive-imp")))
    return OK


def cmd_derive_coimp(args) -> int:
    B = resolve(args.file, args.param)
    name = _binary(B, args.op)
    out = derive_prci(B.lattice, B.ops[name], require_tconorm=not args.unchecked)
    _out(dumps(derivation_doc(B, name, out, "derive-coimp")))
    return OK


def cmd_bridge(args) -> int:
    E = resolve(args.file, args.param)
    P = lea_prl(E)
    rep = check_prl(P.lattice, P.ops["otimes"], P.ops["arrow"])
    doc = {
        "kind": "bridge",
        "subject": E.name,
        "elements": list(P.lattice.labels),
        "otimes": table_doc(P.lattice, P.ops["otimes"]),
        "arrow": table_doc(P.lattice, P.ops["arrow"]),
        "check": check_doc(rep),
    }
    _out(dumps(doc))
    return OK if rep.passed else COUNTEREXAMPLE


def cmd_filters(args) -> int:
    B = resolve(args.file, args.param)
    pair = residuated_pair(B)
    pre = check_wprl(*pair)
    fs = enumerate_filters(B, pair)
    strong = {f.members: is_strong_filter(B, f.members, pair) for f in fs} if args.strong else None
    mp = {f.members: mp_closed(B, f.members, pair) for f in fs} if args.mp else None
    doc = filters_doc(B, fs, strong, mp)
    doc["precondition"] = check_doc(pre)
    _out(dumps(doc))
    ok = pre.passed and (mp is None or all(v.ok for v in mp.values()))
    return OK if ok else COUNTEREXAMPLE


def cmd_quotient(args) -> int:
    B = resolve(args.file, args.param)
    pair = residuated_pair(B)
    members = [s.strip() for s in args.filter.split(",") if s.strip()]
    for m in members:
        B.lattice.index(m)
    Q = build_quotient(B, members, pair)
    rep = check_prl(Q.lattice, Q.otimes, Q.arrow)
    _out(dumps(quotient_doc(B, Q, rep)))
    return OK if rep.passed else COUNTEREXAMPLE


def cmd_enumerate(args) -> int:
    if args.builtin:
        L = resolve(args.builtin, args.param).lattice
    else:
        if args.size < 1:
            raise BadParams("--size must be at least 1")
        L = chain(args.size)
    task = EnumerationTask(L, args.cls, cap=args.cap, symmetry=not args.no_symmetry)
    res = enumerate_class(task)
    _out(dumps(enumeration_doc(L, args.cls, res, with_tables=not args.count_only)))
    return OK


def cmd_verify(args) -> int:
    ids = resolve_ids(args.theorems)
    if args.all:
        scope = families.registry(tuple(args.denominators))
    elif args.builtin:
        scope = [families.builtin(args.builtin, _params(args.param))]
    elif args.file:
        scope = [resolve(args.file, args.param)]
    else:
        raise BadParams("verify needs --builtin NAME, a FILE or --all")
    verdicts = verify_theorems(scope, ids)
    _out(dumps(theorems_doc(verdicts)))
    return COUNTEREXAMPLE if any(v.status == "counterexample" for v in verdicts) else OK


def cmd_infer_order(args) -> int:
    B = resolve(args.file, args.param)
    if not B.claims:
        raise BadParams(f"{B.name} has no claims to infer an order from")
    doc = {"kind": "infer-order", "subject": B.name, "claims": [str(c) for c in B.claims]}
    try:
        orders = infer_orders(B.ops, B.claims, B.lattice.labels, best_fit=args.best_fit, unaries=B.unaries)
    except NoConsistentOrder as exc:
        doc.update(orders=[], message=str(exc))
        _out(dumps(doc))
        return COUNTEREXAMPLE
    doc["orders"] = [lattice_doc(L) for L in orders]
    doc["given_order_consistent"] = any(L.same_order(B.lattice) for L in orders)
    exact = all(r.passed for r in check_claims(StructureBundle(B.name, orders[0], B.ops, B.unaries, B.claims)))
    doc["exact"] = exact
    _out(dumps(doc))
    return OK if exact else COUNTEREXAMPLE


def cmd_export_dot(args) -> int:
    B = resolve(args.file, args.param)
    _out(export_dot(B.lattice, B.name))
    return OK


def cmd_builtin(args) -> int:
    if args.list or not args.name:
        _out("\n".join(families.builtin_names() + sorted(families.FIGURES)) + "\n")
        return OK
    _out(serialize_structure(families.builtin(args.name, _params(args.param))))
    return OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plw", description="Checker and explorer for partial residuated structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str, file: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        if file:
            sp.add_argument("file", metavar="FILE", help="structure file or builtin name")
        sp.add_argument("--param", action="append", metavar="KEY=VALUE", help="builtin parameter (repeatable)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "check class axioms")
    sp.add_argument("--class", dest="cls", metavar="TAG", help="class tag; default checks every claim")
    sp.add_argument("--ops", help="comma-separated operation names for the class")

    sp = add("derive-imp", cmd_derive_imp, "residuated implication of a partial t-norm")
    sp.add_argument("--op", help="operation name")
    sp.add_argument("--empty-sup", choices=("undef", "bottom"), default="undef")
    sp.add_argument("--unchecked", action="store_true", help="skip the partial t-norm precondition")

    sp = add("derive-coimp", cmd_derive_coimp, "co-implication of a partial t-conorm")
    sp.add_argument("--op", help="operation name")
    sp.add_argument("--unchecked", action="store_true", help="skip the partial t-conorm precondition")

    add("bridge", cmd_bridge, "PRL induced by a lattice effect algebra")

    sp = add("filters", cmd_filters, "list filters of a residuated pair")
    sp.add_argument("--strong", action="store_true", help="test each filter for s1-s4")
    sp.add_argument("--mp", action="store_true", help="test modus-ponens closure")

    sp = add("quotient", cmd_quotient, "quotient by the relation a filter induces")
    sp.add_argument("--filter", required=True, metavar="A,B,...")

    sp = add("enumerate", cmd_enumerate, "exhaustive enumeration on a small lattice", file=False)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="use the lattice of a builtin or figure")
    src.add_argument("--size", type=int, metavar="N", help="use the N-element chain")
    sp.add_argument("--class", dest="cls", required=True, choices=ENUMERABLE)
    sp.add_argument("--cap", type=int)
    sp.add_argument("--no-symmetry", action="store_true", help="fill every cell and test commutativity")
    sp.add_argument("--count-only", action="store_true")

    sp = add("verify", cmd_verify, "machine-check theorems", file=False)
    sp.add_argument("file", metavar="FILE", nargs="?")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--builtin", metavar="NAME")
    grp.add_argument("--all", action="store_true", help="the whole builtin registry")
    sp.add_argument("--theorems", default="all", metavar="LIST|all")
    sp.add_argument("--denominators", type=int, nargs="+", default=[2, 4, 8], metavar="D")

    sp = add("infer-order", cmd_infer_order, "recover lattice orders under which the claims hold")
    sp.add_argument("--best-fit", action="store_true", help="fall back to the orders with fewest violations")

    add("export-dot", cmd_export_dot, "Hasse diagram in DOT")

    sp = add("builtin", cmd_builtin, "list builtins or print one as a structure file", file=False)
    sp.add_argument("name", nargs="?")
    sp.add_argument("--list", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, UnknownElement) as exc:
        print(f"plw: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except PlwError as exc:
        _out(dumps({"kind": "error", "error": type(exc).__name__, "message": str(exc)}))
        return COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
