"""Oracle battery: brute-force checks agree with the optimized paths."""

from opetopes.equivalence import dfc_iso_search
from opetopes.generator import GenParams, gen_opetope
from opetopes.oracle import (
    all_chains,
    oracle_hexagon,
    oracle_iso,
    oracle_kernel,
    oracle_lozenge,
    oracle_strictness,
    run_fact_suite,
)
from opetopes.poset import (
    LOOP,
    MINUS,
    PLUS,
    ManyToOnePoset,
    dfc_validate,
    mop_validate,
    path_order,
    thinness_completions,
)
from opetopes.to_poset import p_of
from opetopes.trees import constellation_diagnostics

from conftest import load_dfc_doc
from test_poset import ARROW, cell


def test_lozenge_oracle_agrees_chain_by_chain(rho_dfc, omega_dfc):
    for dfc in (rho_dfc, omega_dfc):
        mop = dfc.mop
        for z, y, x, beta, alpha in all_chains(mop):
            signed = [c for c in oracle_lozenge(mop, z, y, x) if LOOP not in c[1:]]
            assert sorted(signed) == sorted(thinness_completions(mop, z, y, x))
            if alpha != LOOP and beta != LOOP:
                assert len(signed) == 1


def test_lozenge_confinement_behaviour(rho_dfc):
    mop = rho_dfc.mop
    # chain c1 <o b3 <+ a2: every source of a2 is again a loop on c1
    comps = oracle_lozenge(mop, "c1", "b3", "a2")
    assert comps and all(beta == LOOP for (_, _, beta) in comps)


def test_lozenge_oracle_on_mutated_fixture():
    doc = load_dfc_doc("mutations/m04_deleted_completion.dfc.json")
    mop = mop_validate(doc)
    broken = [
        (z, y, x)
        for z, y, x, beta, alpha in all_chains(mop)
        if alpha != LOOP and beta != LOOP
        and len([c for c in oracle_lozenge(mop, z, y, x) if LOOP not in c[1:]]) != 1
    ]
    assert broken


def test_strictness_oracle_agrees(rho_dfc, omega_dfc):
    for dfc in (rho_dfc, omega_dfc):
        for k in range(dfc.dimension + 1):
            for sign in (MINUS, PLUS):
                pairs, strict, _ = oracle_strictness(dfc.mop, k, sign)
                po = path_order(dfc, k, sign)
                assert pairs == po.pairs
                assert strict == po.strict


def test_strictness_detects_artificial_cycle():
    doc = {
        "cells": [
            cell("*", -1),
            cell("s", 0, (), ["*"]),
            cell("t", 0, (), ["*"]),
            cell("f", 1, ["s"], ["t"]),
            cell("g", 1, ["t"], ["s"]),
        ],
        "local_orders": [],
    }
    mop = mop_validate(doc)
    pairs, strict, witness = oracle_strictness(mop, 1, MINUS)
    assert not strict and set(witness) == {"f", "g"}
    po = path_order(mop, 1, MINUS)
    assert not po.strict and po.cycle


def test_kernel_oracle_agrees_with_validator(rho_ope, omega_ope):
    for ope in (rho_ope, omega_ope):
        for c in ope.constellations:
            diags = [d for d in constellation_diagnostics(c) if d.code == "KernelRuleViolated"]
            assert (oracle_kernel(c) is None) == (not diags)


def test_hexagon_oracle_on_fixtures(rho_dfc, omega_dfc):
    assert oracle_hexagon(rho_dfc) == []
    assert oracle_hexagon(omega_dfc) == []


def test_hexagon_oracle_reports_planted_violation():
    doc = load_dfc_doc("omega4.dfc.json")
    rec = next(r for r in doc["cells"] if r["id"] == "b1")
    rec["delta"].remove("c4")  # the source tree under a0/a1 stops being a tree
    mop = mop_validate(doc)
    # bypass dfc_validate: the corrupted structure would be rejected there
    from opetopes.poset import Dfc

    dfc = Dfc(mop, "omega", ("d0", "c0", "b0", "a0", "omega"), {}, {}, {})
    assert oracle_hexagon(dfc)


def test_fact_suite_green_on_fixtures(rho_dfc, omega_dfc):
    for dfc in (rho_dfc, omega_dfc):
        suite = run_fact_suite(dfc)
        assert all(not v for v in suite.values()), {k: v for k, v in suite.items() if v}


def test_fact_suite_on_arrow():
    suite = run_fact_suite(dfc_validate(mop_validate(ARROW)))
    assert all(not v for v in suite.values())


def _small_instances():
    yield dfc_validate(mop_validate(ARROW))
    for seed in (0, 1, 2):
        yield p_of(gen_opetope(seed, GenParams(dim=2, max_linear_nodes=2)))
    yield p_of(gen_opetope(5, GenParams(dim=3, max_linear_nodes=1, max_whitedots_per_edge=1)))


def test_fast_iso_search_complete_against_oracle():
    insts = list(_small_instances())
    for a in insts:
        for b in insts:
            if any(len(a.grade(k)) > 8 for k in range(a.dimension + 1)):
                continue
            witnesses = oracle_iso(a, b)
            fast = dfc_iso_search(a, b)
            assert (fast is not None) == bool(witnesses)
            if fast is not None:
                assert fast.fwd in witnesses


def test_oracle_iso_identity_and_empty(rho_dfc):
    point = dfc_validate(
        mop_validate({"cells": [cell("*", -1), cell("p", 0, (), ["*"])], "local_orders": []}),
        allow_point=True,
    )
    assert oracle_iso(point, point) == [{"*": "*", "p": "p"}]
    arrow = dfc_validate(mop_validate(ARROW))
    assert oracle_iso(arrow, point) == []
