"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import serialize as ser
from .betti import betti_numbers, betti_poset, check_betti_poset, lattice_element_degree
from .homology import FieldError, parse_field
from .monomial import IdealError, MonomialIdeal, parse_ideal
from .poset import GradedPoset, PosetError, find_isomorphism, hasse_dot, lcm_lattice, meet_closure
from .resolution import (
    HomogeneityError,
    is_minimal,
    is_resolution_of,
    minimalize,
    order_complex_resolution,
    relabel,
    taylor_complex,
)


class InputError(Exception):
    pass


def _read(source: str) -> str:
    """Contents of a file, or the argument itself when no such file exists."""
    if source == "-":
        return sys.stdin.read()
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def _json(source: str):
    text = _read(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: not valid JSON ({exc})") from exc


def _ideal(source: str, args) -> MonomialIdeal:
    variables = args.vars.split(",") if getattr(args, "vars", None) else None
    return parse_ideal(_read(source), variables)


def _emit(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj)
    else:
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _fmt(args, allowed: tuple[str, ...]) -> str:
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise InputError(f"--format {fmt} not supported here; choose from {', '.join(allowed)}")
    return fmt


# --- subcommands -----------------------------------------------------------

def cmd_lcm_lattice(args) -> int:
    I = _ideal(args.ideal, args)
    L = lcm_lattice(I)
    _emit(hasse_dot(L) if _fmt(args, ("json", "dot")) == "dot" else ser.poset_to_json(L))
    return 0


def cmd_betti(args) -> int:
    I = _ideal(args.ideal, args)
    table = betti_numbers(I, args.field)
    if _fmt(args, ("json", "text")) == "text":
        _emit(ser.betti_table_text(table, I.variables))
    else:
        _emit({"field": args.field.spec, "totals": list(table.totals()), "table": table.to_json()})
    return 0


def cmd_betti_poset(args) -> int:
    I = _ideal(args.ideal, args)
    res = betti_poset(I, args.field)
    fmt = _fmt(args, ("json", "dot"))
    if fmt == "dot":
        _emit(hasse_dot(res.poset))
    else:
        out = ser.poset_to_json(res.poset)
        out["field"] = args.field.spec
        out["table"] = res.table.to_json()
        _emit(out)
    return 0


def cmd_betti_lattice(args) -> int:
    I = _ideal(args.ideal, args)
    M, _ = meet_closure(betti_poset(I, args.field).poset)

    def name(s):
        d = lattice_element_degree(s)
        return "0" if d is None else I.monomial(d)

    names = {s: name(s) for s in M.elements}
    if _fmt(args, ("json", "dot")) == "dot":
        _emit(hasse_dot(M, labels=names))
        return 0
    out = ser.poset_to_json(M, names)
    out["sets"] = {names[s]: sorted(I.monomial(a) for a in s) for s in M.elements}
    out["field"] = args.field.spec
    _emit(out)
    return 0


def cmd_taylor(args) -> int:
    _emit(ser.complex_to_json(taylor_complex(_ideal(args.ideal, args))))
    return 0


def cmd_resolve(args) -> int:
    I = _ideal(args.ideal, args)
    P = lcm_lattice(I) if args.poset == "lcm" else betti_poset(I, args.field).poset
    _emit(ser.complex_to_json(order_complex_resolution(P, I)))
    return 0


def cmd_verify(args) -> int:
    F = ser.complex_from_json(_json(args.complex))
    I = _ideal(args.ideal, args)
    report = is_resolution_of(F, I, args.field)
    out = report.to_json()
    out["minimal"] = is_minimal(F)
    out["ranks"] = list(F.ranks())
    _emit(out)
    return 0 if report.ok else 1


def cmd_minimalize(args) -> int:
    F = ser.complex_from_json(_json(args.complex))
    _emit(ser.complex_to_json(minimalize(F, args.field)))
    return 0


def cmd_relabel(args) -> int:
    F = ser.complex_from_json(_json(args.complex))
    iso = ser.iso_pairs_from_json(_json(args.iso))
    variables = args.target_vars.split(",") if args.target_vars else None
    _emit(ser.complex_to_json(relabel(F, iso, variables)))
    return 0


def cmd_check_betti_poset(args) -> int:
    P = ser.poset_from_json(_json(args.poset))
    res = check_betti_poset(P, args.field)
    out = {
        "verdict": res.verdict,
        "field": args.field.spec,
        "witnesses": [w.to_json() for w in res.witnesses],
        "lattice": ser.lattice_to_json(res.lattice),
        "realizing_ideal": ser.ideal_json(res.realizing_ideal) if res.realizing_ideal else None,
    }
    _emit(out)
    return 0 if res.verdict else 1


def cmd_iso(args) -> int:
    P = ser.poset_from_json(_json(args.poset_a))
    Q = ser.poset_from_json(_json(args.poset_b))
    iso = find_isomorphism(P, Q)
    if iso is None:
        _emit("none\n")
        return 1
    out: dict = {"mapping": [[x, iso[x]] for x in P.elements]}
    if isinstance(P, GradedPoset) and isinstance(Q, GradedPoset):
        out["degree_pairs"] = [[list(P.grade[x]), list(Q.grade[iso[x]])] for x in P.elements]
    _emit(out)
    return 0


def cmd_hasse(args) -> int:
    data = _read(args.source)
    stripped = data.strip()
    parsed = None
    if stripped.startswith("{"):
        try:
            parsed = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InputError(f"not valid JSON ({exc})") from exc
    if parsed is not None and "elements" in parsed:
        P = ser.poset_from_json(parsed)
        if args.highlight == "betti":
            raise InputError("--highlight betti needs an ideal, not a poset")
        highlight = set(args.highlight.split(",")) if args.highlight else set()
        unknown = highlight - {str(x) for x in P.elements}
        if unknown:
            raise InputError(f"unknown elements to highlight: {sorted(unknown)}")
        _emit(hasse_dot(P, highlight={x for x in P.elements if str(x) in highlight}))
        return 0
    I = _ideal(args.source, args)
    L = lcm_lattice(I)
    highlight = set()
    if args.highlight == "betti":
        B = betti_poset(I, args.field).poset
        highlight = {x for x in L.elements if x not in B}
    elif args.highlight:
        wanted = set(args.highlight.split(","))
        highlight = {x for x in L.elements if L.label(x) in wanted}
    _emit(hasse_dot(L, highlight=highlight))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="'q' (rationals, default) or 'gf:p'")
    common.add_argument("--vars", help="comma-separated variable names for monomial-string ideals")
    common.add_argument("--format", choices=("json", "dot", "text"), help="output format")

    parser = argparse.ArgumentParser(prog="bettikit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    add("lcm-lattice", cmd_lcm_lattice, "lcm-lattice minus its bottom").add_argument("ideal")
    add("betti", cmd_betti, "multigraded Betti numbers").add_argument("ideal")
    add("betti-poset", cmd_betti_poset, "Betti poset with its Betti table").add_argument("ideal")
    add("betti-lattice", cmd_betti_lattice, "meet-closure of the Betti poset").add_argument("ideal")
    add("taylor", cmd_taylor, "Taylor resolution").add_argument("ideal")
    p = add("resolve", cmd_resolve, "resolution supported on an order complex")
    p.add_argument("ideal")
    p.add_argument("--poset", choices=("lcm", "betti"), default="lcm")
    p = add("verify", cmd_verify, "check that a complex resolves an ideal")
    p.add_argument("complex")
    p.add_argument("ideal")
    add("minimalize", cmd_minimalize, "cancel unit entries of a complex").add_argument("complex")
    p = add("relabel", cmd_relabel, "relabel basis degrees along a poset isomorphism")
    p.add_argument("complex")
    p.add_argument("--iso", required=True, help="JSON list of [source, target] degree pairs")
    p.add_argument("--target-vars", help="comma-separated variable names of the target ring")
    add("check-betti-poset", cmd_check_betti_poset, "is this poset a Betti poset?").add_argument("poset")
    p = add("iso", cmd_iso, "find an order isomorphism between two posets")
    p.add_argument("poset_a")
    p.add_argument("poset_b")
    p = add("hasse", cmd_hasse, "DOT Hasse diagram of a poset or an lcm-lattice")
    p.add_argument("source")
    p.add_argument("--highlight", help="'betti' (dash non-Betti lcm elements) or comma-separated element ids")
    return parser


ERRORS = (InputError, IdealError, PosetError, FieldError, HomogeneityError, ValueError, KeyError, OSError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.field = parse_field(args.field)
        return args.func(args)
    except ERRORS as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
