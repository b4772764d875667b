"""Command-line surface: validate, convert, iso, roundtrip, gen, oracle, export-dot, info.

Exit codes: 0 success, 1 invalid structure / no isomorphism / broken round
trip, 2 usage or parse errors.  Diagnostics go to stdout as JSON lines.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generator, oracle
from .diagnostics import IncomparableLoops, ParseError, RoundTripBroken, ValidationError
from .dot import export_dot
from .equivalence import EXHAUSTED, dfc_iso_search, opetope_iso_search, tau, theta
from .io import (
    detect_kind,
    dfc_to_doc,
    opetope_from_doc,
    opetope_to_doc,
    parse_dfc,
    parse_json,
    parse_opetope,
    serialize_doc,
)
from .poset import dfc_diagnostics, dfc_validate, mop_diagnostics, mop_validate
from .to_poset import p_of
from .to_zoom import z_of
from .trees import opetope_diagnostics, opetope_validate

OK, INVALID, USAGE = 0, 1, 2


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_any(path: str, allow_point: bool = False):
    """(kind, validated object) for a document of either encoding."""
    doc = parse_json(_read(path))
    kind = detect_kind(doc)
    if kind == "dfc":
        doc, warnings = parse_dfc(_read(path))
        for w in warnings:
            _emit({"warning": w, "file": path})
        diags = mop_diagnostics(doc)
        if not diags:
            mop = mop_validate(doc)
            diags = dfc_diagnostics(mop, allow_point=allow_point)
        if diags:
            raise ValidationError(diags)
        return kind, dfc_validate(mop, allow_point=allow_point)
    doc, warnings = parse_opetope(_read(path))
    for w in warnings:
        _emit({"warning": w, "file": path})
    return kind, opetope_validate(opetope_from_doc(doc))


def cmd_validate(args) -> int:
    worst = OK
    for path in args.files:
        try:
            _load_any(path, allow_point=args.allow_point)
            _emit({"file": path, "valid": True})
        except ValidationError as err:
            for d in err.diagnostics:
                _emit({"file": path, **d.to_json()})
            _emit({"file": path, "valid": False})
            worst = max(worst, INVALID)
    return worst


def cmd_convert(args) -> int:
    kind, obj = _load_any(args.file, allow_point=args.allow_point)
    if args.to == "ope":
        doc = opetope_to_doc(z_of(obj)) if kind == "dfc" else opetope_to_doc(obj)
    else:
        doc = dfc_to_doc(p_of(obj)) if kind == "opetope" else dfc_to_doc(obj)
    text = serialize_doc(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_iso(args) -> int:
    kind_a, a = _load_any(args.a)
    kind_b, b = _load_any(args.b)
    if kind_a != kind_b:
        _emit({"result": "none", "reason": "documents encode different kinds of structure"})
        return INVALID
    search = dfc_iso_search if kind_a == "dfc" else opetope_iso_search
    witness = search(a, b, budget=args.budget)
    if witness is EXHAUSTED:
        _emit({"result": "exhausted", "budget": args.budget})
        return INVALID
    if witness is None:
        _emit({"result": "none"})
        return INVALID
    _emit({"result": "iso", **witness.to_json()})
    return OK


def cmd_roundtrip(args) -> int:
    kind, obj = _load_any(args.file)
    try:
        witness = theta(obj) if kind == "dfc" else tau(obj)
    except RoundTripBroken as err:
        _emit({"result": "broken", "detail": str(err)})
        return INVALID
    _emit({"result": "verified", **witness.to_json()})
    return OK


def cmd_gen(args) -> int:
    params = generator.GenParams(
        dim=args.dim,
        max_linear_nodes=args.max_nodes,
        max_whitedots_per_edge=args.max_whitedots,
    )
    import random

    rng = random.Random(args.seed)
    for i in range(args.count):
        ope = generator.gen_opetope(rng, params)
        text = serialize_doc(opetope_to_doc(ope))
        if args.output:
            out = Path(args.output)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"ope_{args.seed}_{i}.json").write_text(text)
        elif args.count == 1:
            sys.stdout.write(text)
        else:
            _emit(opetope_to_doc(ope))
    return OK


def cmd_oracle(args) -> int:
    kind, obj = _load_any(args.file)
    if args.check == "lozenge":
        if kind != "dfc":
            raise ParseError("lozenge oracle needs a DFC document")
        comps = oracle.oracle_lozenge(obj.mop, args.z, args.y, args.x)
        _emit({"chain": [args.z, args.y, args.x], "completions": [list(c) for c in comps]})
        return OK
    if args.check == "strictness":
        if kind != "dfc":
            raise ParseError("strictness oracle needs a DFC document")
        ok = True
        for k in range(obj.dimension + 1):
            for sign in "-+":
                _, strict, witness = oracle.oracle_strictness(obj.mop, k, sign)
                _emit({"grade": k, "sign": sign, "strict": strict, "cycle_cells": list(witness)})
                ok = ok and strict
        return OK if ok else INVALID
    if args.check == "kernel":
        if kind != "opetope":
            raise ParseError("kernel oracle needs an opetope document")
        bad = [oracle.oracle_kernel(c) for c in obj.constellations]
        for i, b in enumerate(bad):
            _emit({"constellation": i + 1, "kernel": "ok" if b is None else {"element": b[0], "components": b[1]}})
        return OK if all(b is None for b in bad) else INVALID
    if args.check == "hexagon":
        if kind != "dfc":
            raise ParseError("hexagon oracle needs a DFC document")
        bad = oracle.oracle_hexagon(obj)
        _emit({"hexagon": "ok" if not bad else [list(map(str, b)) for b in bad]})
        return OK if not bad else INVALID
    if args.check == "iso":
        kind2, other = _load_any(args.against)
        if kind != "dfc" or kind2 != "dfc":
            raise ParseError("iso oracle needs two DFC documents")
        witnesses = oracle.oracle_iso(obj, other)
        _emit({"witnesses": [dict(sorted(w.items())) for w in witnesses]})
        return OK if witnesses else INVALID
    raise ParseError(f"unknown oracle check {args.check!r}")


def cmd_export_dot(args) -> int:
    kind, obj = _load_any(args.file, allow_point=args.allow_point)
    wanted = {"hasse": "dfc", "tree": "opetope"}.get(args.style)
    if wanted is not None and wanted != kind:
        raise ParseError(f"style {args.style!r} applies to {wanted} documents, got a {kind}")
    sys.stdout.write(export_dot(obj, style=args.style))
    return OK


def cmd_info(args) -> int:
    kind, obj = _load_any(args.file, allow_point=args.allow_point)
    if kind == "dfc":
        mop = obj.mop
        _emit(
            {
                "kind": "dfc",
                "dimension": obj.dimension,
                "cells_by_dim": {str(k): len(mop.grade(k)) for k in range(-1, obj.dimension + 1)},
                "greatest": obj.omega,
                "iterated_targets": list(obj.iterated_targets),
                "loops_by_dim": {str(k): sorted(obj.omega_k[k]) for k in obj.omega_k if obj.omega_k[k]},
                "degenerate": obj.degenerate,
            }
        )
    else:
        _emit(
            {
                "kind": "opetope",
                "dimension": obj.dim,
                "tree_sizes": [{"nodes": len(t.nodes), "edges": len(t.edges)} for t in obj.trees],
                "degenerate": obj.degenerate,
            }
        )
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opetopes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate DFC or opetope documents")
    p.add_argument("files", nargs="+")
    p.add_argument("--allow-point", action="store_true", help="accept the degenerate point complex")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("convert", help="translate between the two encodings")
    p.add_argument("--to", choices=["ope", "dfc"], required=True)
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--allow-point", action="store_true")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("iso", help="search for an isomorphism witness")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("roundtrip", help="verify the round-trip witness of a document")
    p.add_argument("file")
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser("gen", help="generate random opetopes")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-nodes", type=int, default=3)
    p.add_argument("--max-whitedots", type=int, default=2)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("-o", "--output", help="directory for one file per structure")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("oracle", help="run a brute-force check")
    p.add_argument("check", choices=["lozenge", "strictness", "kernel", "hexagon", "iso"])
    p.add_argument("file")
    p.add_argument("--against", help="second document for the iso oracle")
    p.add_argument("-z")
    p.add_argument("-y")
    p.add_argument("-x")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("export-dot", help="emit a DOT rendering")
    p.add_argument("file")
    p.add_argument("--style", choices=["auto", "hasse", "tree"], default="auto")
    p.add_argument("--allow-point", action="store_true")
    p.set_defaults(fn=cmd_export_dot)

    p = sub.add_parser("info", help="summarize a document")
    p.add_argument("file")
    p.add_argument("--allow-point", action="store_true")
    p.set_defaults(fn=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return USAGE if err.code not in (0, None) else OK
    try:
        return args.fn(args)
    except ValidationError as err:
        for d in err.diagnostics:
            _emit(d.to_json())
        _emit({"valid": False})
        return INVALID
    except (ParseError, FileNotFoundError, IncomparableLoops) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE
    except RoundTripBroken as err:
        _emit({"result": "broken", "detail": str(err)})
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
