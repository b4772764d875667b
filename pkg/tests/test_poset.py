"""Core poset layer: MOP and DFC validation, strata, path orders, source trees."""

import pytest

from opetopes.diagnostics import ValidationError
from opetopes.poset import (
    LOOP,
    MINUS,
    PLUS,
    delta_tree,
    dfc_diagnostics,
    dfc_validate,
    iterated_target,
    mop_diagnostics,
    mop_validate,
    path_order,
    relation_sign,
    sign_product,
    strata,
)

from conftest import load_dfc_doc


def cell(cid, dim, delta=(), gamma=()):
    return {"id": cid, "dim": dim, "delta": list(delta), "gamma": list(gamma)}


ARROW = {
    "cells": [
        cell("*", -1),
        cell("s", 0, (), ["*"]),
        cell("t", 0, (), ["*"]),
        cell("f", 1, ["s"], ["t"]),
    ],
    "local_orders": [],
}


def codes(diags):
    return sorted({d.code for d in diags})


def test_sign_monoid():
    assert sign_product(MINUS, MINUS) == PLUS
    assert sign_product(MINUS, PLUS) == MINUS
    assert sign_product(LOOP, PLUS) == LOOP
    assert sign_product(LOOP, LOOP) == LOOP


def test_rho_fixture_is_valid_mop_and_dfc(rho_dfc):
    assert len(rho_dfc.mop.cells) == 22
    assert [len(rho_dfc.grade(k)) for k in range(-1, 4)] == [1, 3, 9, 8, 1]


def test_gamma_not_singleton_reported():
    doc = load_dfc_doc("rho3.dfc.json")
    rec = next(r for r in doc["cells"] if r["id"] == "a3")
    rec["gamma"] = ["b4", "b5"]
    assert "GammaNotSingleton" in codes(mop_diagnostics(doc))


def test_loop_axiom_violated_reported():
    # delta {y, y'} meeting gamma {y} without equality
    doc = {
        "cells": [
            cell("*", -1),
            cell("p", 0, (), ["*"]),
            cell("q", 0, (), ["*"]),
            cell("e", 1, ["p", "q"], ["p"]),
        ],
        "local_orders": [],
    }
    assert "LoopAxiomViolated" in codes(mop_diagnostics(doc))


def test_mop_validate_collects_all_violations():
    doc = {
        "cells": [
            cell("*", -1),
            cell("p", 0, (), ["zz"]),
            cell("e", 1, ["p", "p"], []),
        ],
        "local_orders": [],
    }
    got = codes(mop_diagnostics(doc))
    assert "DanglingId" in got and "DuplicateFacet" in got and "GammaNotSingleton" in got
    with pytest.raises(ValidationError):
        mop_validate(doc)


def test_relation_sign_examples(rho_dfc):
    mop = rho_dfc.mop
    assert relation_sign(mop, "c1", "b4") == LOOP
    assert relation_sign(mop, "a0", "rho") == PLUS
    assert relation_sign(mop, "b2", "a1") == MINUS
    assert relation_sign(mop, "rho", "rho") is None
    assert relation_sign(mop, "c0", "a0") is None


def test_dfc_validate_flattened_loop_mutation():
    doc = load_dfc_doc("mutations/m02_loop_flattened.dfc.json")
    mop = mop_validate(doc)
    got = codes(dfc_diagnostics(mop))
    assert any(c.startswith("Thinness") or c == "SignRuleViolated" for c in got)


def test_dfc_diagnostics_are_deterministic():
    doc = load_dfc_doc("mutations/m09_facet_cycle.dfc.json")
    runs = [dfc_diagnostics(mop_validate(doc)) for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    assert "AcyclicityCycle" in codes(runs[0])


def test_point_complex_needs_flag():
    doc = {"cells": [cell("*", -1), cell("p", 0, (), ["*"])], "local_orders": []}
    mop = mop_validate(doc)
    assert "NoGreatestElement" in codes(dfc_diagnostics(mop))
    point = dfc_validate(mop, allow_point=True)
    assert point.degenerate and point.omega == "p"


def test_loop_without_plus_coface():
    doc = {
        "cells": [
            cell("*", -1),
            cell("p", 0, (), ["*"]),
            cell("l", 1, ["p"], ["p"]),
            cell("g", 1, ["p"], ["p"]),
            cell("x", 2, ["l"], ["g"]),
        ],
        "local_orders": [],
    }
    got = codes(dfc_diagnostics(mop_validate(doc)))
    assert "LoopWithoutPlusCoface" in got  # l has no cell with l as proper target


def test_iterated_targets(rho_dfc, omega_dfc):
    assert iterated_target(rho_dfc, 2) == "a0"
    assert iterated_target(rho_dfc, 3) == "rho"
    assert iterated_target(rho_dfc, 0) == "c0"
    assert iterated_target(omega_dfc, 1) == "c0"
    assert iterated_target(omega_dfc, 0) == "d0"


def test_strata(rho_dfc):
    lam, loops, nulls = strata(rho_dfc)
    assert loops[1] == frozenset({"b3", "b4", "b5", "b6", "b8"})
    assert nulls[2] & lam[2] == frozenset({"a3", "a4", "a5", "a7"})
    assert "rho" in lam[3]
    assert lam[2] == frozenset({"a1", "a2", "a3", "a4", "a5", "a6", "a7"})


def test_path_order_minus(rho_dfc):
    po = path_order(rho_dfc, 1, MINUS)
    assert ("b2", "b1") in po.pairs  # gamma(b2) = c1 is a source of b1
    assert po.strict


def test_path_order_plus_strict_everywhere(rho_dfc, omega_dfc):
    for dfc in (rho_dfc, omega_dfc):
        for k in range(dfc.dimension + 1):
            assert path_order(dfc, k, PLUS).strict


def test_path_order_top_grade_empty(rho_dfc):
    po = path_order(rho_dfc, 3, PLUS)
    assert not po.pairs and po.strict


def test_delta_tree_loop_cases(rho_dfc, omega_dfc):
    # a loop whose target is again a loop gives the unit tree
    t = delta_tree(omega_dfc, "b6")  # delta(b6) = {c1}, a non-loop: corolla case
    assert t.is_corolla and t.root == "d0"
    # loop on a loop: c4 in the 4-dimensional fixture, delta(c4) = {d1} non-loop
    t = delta_tree(omega_dfc, "c3")
    assert t.nodes == ("d0",)
    # nulldot: delta empty, target a loop -> unit tree
    t = delta_tree(omega_dfc, "b2")  # gamma(b2) = c3, a loop on d0
    assert t.is_unit and t.edges == ("d0",)


def test_delta_tree_against_independent_reconstruction(omega_dfc):
    mop = omega_dfc.mop
    a = "a1"
    tree = delta_tree(omega_dfc, a)
    loops = {x for x in mop.cells if mop.is_loop(x)}
    nodes = set(mop.delta[a]) - loops
    assert set(tree.nodes) == nodes and len(tree.nodes) == len(mop.delta[a] - loops)
    # incidence-list reconstruction: b hangs over b' iff gamma(b) is a proper source of b'
    for b in nodes:
        assert tree.node_target[b] == next(iter(mop.gamma[b]))
    for z in tree.edges:
        owners = [b for b in nodes if z in mop.delta[b] - mop.gamma[b]]
        assert tree.edge_target.get(z) == (owners[0] if owners else None)
    assert tree.root == "c0"


def test_arrow_is_valid():
    dfc = dfc_validate(mop_validate(ARROW))
    assert dfc.dimension == 1 and dfc.omega == "f"


def test_local_order_required_and_checked():
    doc = load_dfc_doc("rho3.dfc.json")
    doc["local_orders"] = [o for o in doc["local_orders"] if o["x"] != "a1"]
    assert "LocalOrderMissing" in codes(mop_diagnostics(doc))
    doc = load_dfc_doc("rho3.dfc.json")
    doc["local_orders"][0]["order"] = ["b6", "b3", "b6"]
    assert "LocalOrderInvalid" in codes(mop_diagnostics(doc))
