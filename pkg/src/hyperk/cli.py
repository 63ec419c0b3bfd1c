"""Command-line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 pass, 1 a check failed, 2 malformed or invalid input,
3 resource cap exceeded, 4 fixsg3 round-trip inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Any, Sequence

from .constructions import (
    ConstructionError,
    builtin,
    m_of_g,
    marshall_quotient,
    product_h,
    special_group_of,
    squares,
)
from .f2linalg import DimensionError, ResourceLimitError
from .hyperstructures import (
    FiniteMultiring,
    MalformedStructure,
    NotAHyperfield,
    as_hyperfield,
    check_dm,
    check_hyperfield,
    check_multiring,
    classify,
    dumps,
    multiring_from_json,
    multiring_to_json,
)
from .specialgroups import (
    SpecialGroupTable,
    check_sg,
    field_special_group,
    reduced_product_group,
    sg_from_json,
)

__all__ = ["main"]

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_RESOURCE, EXIT_INCONSISTENT = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedStructure(f"{path}: invalid JSON ({exc.msg})") from exc


def _structure(source: str) -> FiniteMultiring:
    """A JSON file path, '-' for stdin, or a builtin name."""
    if source == "-" or os.path.exists(source):
        doc = _load_json(source)
        if isinstance(doc, dict) and "iso" in doc:
            return m_of_g(sg_from_json(doc))
        return multiring_from_json(doc)
    try:
        return builtin(source)
    except ConstructionError as exc:
        raise UsageError(f"{source!r} is neither a file nor a builtin") from exc


_SG_SPEC = re.compile(r"^(reduced|field)\(?(\d+)\)?$")


def _special_group(source: str) -> SpecialGroupTable:
    m = _SG_SPEC.match(source.strip().lower())
    if m:
        kind, arg = m.group(1), int(m.group(2))
        return reduced_product_group(arg) if kind == "reduced" else field_special_group(arg)
    if source == "-" or os.path.exists(source):
        doc = _load_json(source)
        if isinstance(doc, dict) and "iso" in doc:
            return sg_from_json(doc)
        return special_group_of(multiring_from_json(doc))[0]
    raise UsageError(f"{source!r} is not a special group spec")


def _emit(doc: Any, args: argparse.Namespace) -> None:
    text = dumps(doc, args.pretty)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _names(f: FiniteMultiring, tokens: str) -> list[int]:
    out = []
    for tok in tokens.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(f.index(tok))
        except KeyError:
            if tok.isdigit() and int(tok) < f.size:
                out.append(int(tok))
            else:
                raise UsageError(f"unknown element {tok!r}") from None
    return out


# --- subcommands ----------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    if args.builtin:
        f = builtin(args.builtin)
    elif args.product:
        a, b = (as_hyperfield(_structure(x)) for x in args.product)
        f = product_h(a, b)
    elif args.quotient:
        if not args.by_squares:
            raise UsageError("--quotient needs --by-squares")
        base = _structure(args.quotient)
        f, _, _ = marshall_quotient(base, squares(base))
    else:
        f = m_of_g(_special_group(args.m_of_g))
    _emit(multiring_to_json(f), args)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.level == "sg":
        g = _special_group(args.input)
        report = check_sg(g)
        _emit({"level": "sg", **report.to_json()}, args)
        return EXIT_OK if report.ok else EXIT_FAIL
    f = _structure(args.input)
    report = check_multiring(f)
    if args.level in ("hyperfield", "dm"):
        report.merge(check_hyperfield(f))
    if args.level == "dm":
        report.merge(check_dm(f, args.dm2_reading))
        report.extras["classification"] = classify(f, args.dm2_reading)
    report.system = args.level
    _emit({"level": args.level, **report.to_json(f.elements)}, args)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_ktheory(args: argparse.Namespace) -> int:
    from .ktheory import check_igr, igr_from_k, reduced_k, smc_check

    f = as_hyperfield(_structure(args.input))
    data = reduced_k(f, args.max_degree, args.pair_mode)
    doc = {
        "name": data.name,
        "pair_mode": data.pair_mode,
        "dims": data.dims(),
        "graded": data.to_json(),
        "smc": smc_check(data),
        "igr": check_igr(igr_from_k(data)).to_json(),
    }
    _emit(doc, args)
    return EXIT_OK


def cmd_interchange(args: argparse.Namespace) -> int:
    from .ktheory.interchange import InterchangeError, interchange_report

    try:
        doc = interchange_report(args.p, args.max_degree)
    except InterchangeError as exc:
        raise UsageError(str(exc)) from exc
    _emit(doc, args)
    return EXIT_OK if doc["ok"] else EXIT_FAIL


def cmd_fixsg3(args: argparse.Namespace) -> int:
    from .ktheory.fixsg3 import Fixsg3Error, fixsg3_backward, fixsg3_forward

    f = as_hyperfield(_structure(args.input))
    a, b = _names(f, args.a), _names(f, args.b)
    try:
        fwd = fixsg3_forward(f, a, b, args.dm2_reading)
    except Fixsg3Error as exc:
        raise UsageError(str(exc)) from exc
    doc: dict[str, Any] = {"subject": f.name, "a": [f.elements[x] for x in a], "b": [f.elements[x] for x in b]}
    if not fwd.zero:
        doc.update({"zero": False, "reduced": [(fwd.reduced >> i) & 1 for i in range(fwd.reduced.bit_length())]})
        _emit(doc, args)
        return EXIT_FAIL
    accepted, clause = fixsg3_backward(f, a, b, fwd.witness, args.dm2_reading)
    doc.update({"zero": True, "witness": fwd.witness.to_json(f), "round_trip": accepted})
    if clause:
        doc["failed_clause"] = clause
    _emit(doc, args)
    return EXIT_OK if accepted else EXIT_INCONSISTENT


def cmd_adjunction(args: argparse.Namespace) -> int:
    from .ktheory.adjunction import AdjunctionError, adjunction_unit, f_sharp

    f = as_hyperfield(_structure(args.input))
    try:
        unit = adjunction_unit(f, args.max_degree, args.dm2_reading)
    except AdjunctionError as exc:
        raise UsageError(str(exc)) from exc
    sharp = f_sharp(unit.phi, f, unit.igr, dm2_reading=args.dm2_reading)
    identity = sharp.morphism is not None and all(
        sharp.morphism.maps[n] == tuple(1 << i for i in range(unit.igr.dims[n])) for n in range(len(sharp.morphism.maps))
    )
    doc = {
        "subject": f.name,
        "phi": {f.elements[a]: unit.gamma.elements[y] for a, y in enumerate(unit.phi)},
        "unit": unit.report.to_json(),
        "f_sharp": sharp.report.to_json(),
        "f_sharp_is_identity": identity,
    }
    _emit(doc, args)
    return EXIT_OK if unit.report.ok and sharp.report.ok and identity else EXIT_FAIL


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")

    parser = argparse.ArgumentParser(prog="hyperk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit a hyperfield document")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", metavar="NAME", help="q2, krasner, x<n>, h<p>, gf<p>")
    src.add_argument("--product", nargs=2, metavar=("A", "B"), help="hyperbolic product of two structures")
    src.add_argument("--quotient", metavar="X", help="quotient of X (use with --by-squares)")
    src.add_argument("--m-of-g", metavar="SPEC", help="reduced<n>, field<p>, or a special group JSON file")
    p.add_argument("--by-squares", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="run an axiom suite")
    p.add_argument("input")
    p.add_argument("--level", choices=("multiring", "hyperfield", "dm", "sg"), required=True)
    p.add_argument("--dm2-reading", choices=("expanded", "pointwise"), default="expanded")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ktheory", parents=[common], help="reduced K-theory up to degree N")
    p.add_argument("input")
    p.add_argument("-N", "--max-degree", type=int, default=4)
    p.add_argument("--pair-mode", choices=("distinct", "adjacent", "any"), default="distinct")
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("interchange", parents=[common], help="compare K-theories attached to GF(p)")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-N", "--max-degree", type=int, default=3)
    p.set_defaults(func=cmd_interchange)

    p = sub.add_parser("fixsg3", parents=[common], help="witness for a vanishing degree-2 sum")
    p.add_argument("input")
    p.add_argument("--a", required=True, help="comma-separated element names")
    p.add_argument("--b", required=True, help="comma-separated element names")
    p.add_argument("--dm2-reading", choices=("expanded", "pointwise"), default="pointwise")
    p.set_defaults(func=cmd_fixsg3)

    p = sub.add_parser("adjunction", parents=[common], help="adjunction unit and factorization report")
    p.add_argument("input")
    p.add_argument("-N", "--max-degree", type=int, default=2)
    p.add_argument("--dm2-reading", choices=("expanded", "pointwise"), default="pointwise")
    p.set_defaults(func=cmd_adjunction)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_degree", 0) < 0:
        print("error: max degree must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (MalformedStructure, NotAHyperfield, ConstructionError, DimensionError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
