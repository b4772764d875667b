"""JSON documents for both encodings: parsing, building, canonical output.

Serialization is canonical (sorted keys, two-space indent, trailing newline)
and keeps arrays in document order, so serialize . parse . serialize equals
serialize byte for byte.  Unknown fields survive a round trip and are
reported as warnings.
"""

from __future__ import annotations

import json

from .diagnostics import ParseError
from .poset import Dfc, ManyToOnePoset, mop_validate
from .trees import Constellation, Opetope, RootedTree

DFC_CELL_KEYS = {"id", "dim", "delta", "gamma"}
TREE_KEYS = {"nodes", "edges", "node_target", "edge_target", "root"}
CONSTELLATION_KEYS = {"subdivision", "sigma_black", "sigma_white"}


def parse_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, (err.lineno, err.colno)) from err


def serialize_doc(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def detect_kind(doc) -> str:
    if isinstance(doc, dict) and "cells" in doc:
        return "dfc"
    if isinstance(doc, dict) and "trees" in doc:
        return "opetope"
    raise ParseError("document is neither a DFC (no 'cells') nor an opetope (no 'trees')")


# -- DFC documents -----------------------------------------------------


def parse_dfc(text: str) -> tuple[dict, list[str]]:
    """Normalized DFC document plus warnings for unknown fields."""
    doc = parse_json(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("cells"), list):
        raise ParseError("a DFC document is an object with a 'cells' array")
    warnings = []
    for rec in doc["cells"]:
        if not isinstance(rec, dict) or "id" not in rec:
            raise ParseError("each cell is an object with at least an 'id'")
        rec.setdefault("dim", -1)
        rec.setdefault("delta", [])
        rec.setdefault("gamma", [])
        for key in sorted(set(rec) - DFC_CELL_KEYS):
            warnings.append(f"cell {rec['id']!r}: unknown field {key!r} preserved")
    doc.setdefault("local_orders", [])
    for rec in doc["local_orders"]:
        if not isinstance(rec, dict) or not {"x", "z", "order"} <= set(rec):
            raise ParseError("each local order is an object with 'x', 'z' and 'order'")
    for key in sorted(set(doc) - {"cells", "local_orders"}):
        warnings.append(f"document: unknown field {key!r} preserved")
    return doc, warnings


def serialize_dfc(obj) -> str:
    if isinstance(obj, Dfc):
        obj = dfc_to_doc(obj)
    elif isinstance(obj, ManyToOnePoset):
        obj = mop_to_doc(obj)
    return serialize_doc(obj)


def mop_to_doc(mop: ManyToOnePoset) -> dict:
    cells = []
    for c in sorted(mop.cells, key=lambda c: (mop.dim[c], c)):
        cells.append(
            {"id": c, "dim": mop.dim[c], "delta": sorted(mop.delta[c]), "gamma": sorted(mop.gamma[c])}
        )
    orders = [
        {"x": x, "z": z, "order": list(seq)}
        for (x, z), seq in sorted(mop.local_orders.items())
    ]
    return {"cells": cells, "local_orders": orders}


def dfc_to_doc(dfc: Dfc) -> dict:
    return mop_to_doc(dfc.mop)


# -- opetope documents -------------------------------------------------


def parse_opetope(text: str) -> tuple[dict, list[str]]:
    doc = parse_json(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("trees"), list) or not doc["trees"]:
        raise ParseError("an opetope document is an object with a non-empty 'trees' array")
    warnings = []
    for i, rec in enumerate(doc["trees"]):
        if not isinstance(rec, dict) or "root" not in rec:
            raise ParseError(f"tree {i} must be an object with at least a 'root'")
        rec.setdefault("nodes", [])
        rec.setdefault("edges", [])
        rec.setdefault("node_target", {})
        rec.setdefault("edge_target", {})
        for key in sorted(set(rec) - TREE_KEYS):
            warnings.append(f"tree {i}: unknown field {key!r} preserved")
    doc.setdefault("constellations", [])
    for i, rec in enumerate(doc["constellations"]):
        if not isinstance(rec, dict):
            raise ParseError(f"constellation {i} must be an object")
        rec.setdefault("subdivision", {})
        for key in sorted(set(rec) - CONSTELLATION_KEYS):
            warnings.append(f"constellation {i}: unknown field {key!r} preserved")
    if len(doc["constellations"]) != len(doc["trees"]) - 1:
        raise ParseError(
            f"{len(doc['trees'])} trees need {len(doc['trees']) - 1} constellations, got {len(doc['constellations'])}"
        )
    doc.setdefault("dim", len(doc["trees"]) - 1)
    for key in sorted(set(doc) - {"dim", "trees", "constellations"}):
        warnings.append(f"document: unknown field {key!r} preserved")
    return doc, warnings


def tree_from_doc(rec: dict) -> RootedTree:
    return RootedTree(rec["nodes"], rec["edges"], rec["node_target"], rec["edge_target"], rec["root"])


def opetope_from_doc(doc: dict) -> Opetope:
    trees = tuple(tree_from_doc(rec) for rec in doc["trees"])
    constellations = []
    for i, rec in enumerate(doc["constellations"]):
        constellations.append(
            Constellation(
                domain=trees[i],
                subdivision={b: tuple(ws) for b, ws in rec["subdivision"].items()},
                codomain=trees[i + 1],
                sigma_black=rec.get("sigma_black"),
                sigma_white=rec.get("sigma_white"),
            )
        )
    return Opetope(trees, tuple(constellations))


def tree_to_doc(t: RootedTree) -> dict:
    return {
        "nodes": sorted(t.nodes),
        "edges": sorted(t.edges),
        "node_target": dict(sorted(t.node_target.items())),
        "edge_target": dict(sorted(t.edge_target.items())),
        "root": t.root,
    }


def opetope_to_doc(ope: Opetope) -> dict:
    constellations = []
    for c in ope.constellations:
        rec = {"subdivision": {b: list(ws) for b, ws in sorted(c.subdivision.items()) if ws}}
        if c.sigma_black is not None:
            rec["sigma_black"] = dict(sorted(c.sigma_black.items()))
        if c.sigma_white is not None:
            rec["sigma_white"] = dict(sorted(c.sigma_white.items()))
        constellations.append(rec)
    return {
        "dim": ope.dim,
        "trees": [tree_to_doc(t) for t in ope.trees],
        "constellations": constellations,
    }


def serialize_opetope(obj) -> str:
    if isinstance(obj, Opetope):
        obj = opetope_to_doc(obj)
    return serialize_doc(obj)
