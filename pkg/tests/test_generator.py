"""Seeded generation: validity, determinism, reachability of the worked nesting."""

import random

from opetopes.equivalence import _tree_isos
from opetopes.generator import GenParams, _Namer, gen_base, gen_nesting, gen_opetope, gen_subdivision
from opetopes.io import opetope_to_doc, serialize_doc
from opetopes.poset import dfc_diagnostics
from opetopes.to_poset import p_of
from opetopes.trees import SubdividedTree, constellation_diagnostics, opetope_diagnostics


def test_gen_base_shapes():
    for seed in range(10):
        rng = random.Random(seed)
        trees, constellations = gen_base(rng, max_linear_nodes=3)
        assert len(trees) == 3 and len(constellations) == 2
        assert trees[2].is_linear or trees[2].is_unit
        for c in constellations:
            assert not constellation_diagnostics(c)


def test_gen_subdivision_bounds_and_reproducibility():
    trees, _ = gen_base(random.Random(3), 3)
    one = gen_subdivision(random.Random(5), trees[2], 2, _Namer(9))
    two = gen_subdivision(random.Random(5), trees[2], 2, _Namer(9))
    assert one.w == two.w
    assert all(len(ws) <= 2 for ws in one.w.values())
    zero = gen_subdivision(random.Random(5), trees[2], 0, _Namer(9))
    assert zero.w == {}


def test_500_nestings_all_validate(rho_ope):
    s2 = rho_ope.trees[2]
    sub = rho_ope.constellations[2].subdivision
    t_prime = SubdividedTree(s2, sub)
    for seed in range(500):
        u, c = gen_nesting(random.Random(seed), t_prime, _Namer(7))
        assert not constellation_diagnostics(c), seed


def test_worked_nesting_is_reachable(rho_ope):
    # the published nesting of the subdivided linear tree (two blackdots,
    # four whitedots on the middle edge) must come up within a seed sweep
    s2 = rho_ope.trees[2]
    t_prime = SubdividedTree(s2, rho_ope.constellations[2].subdivision)
    target = rho_ope.trees[3]
    forced = {d: d for d in list(s2.nodes) + list(t_prime.whitedots())}
    for seed in range(3000):
        u, _ = gen_nesting(random.Random(seed), t_prime, _Namer(7))
        if len(u.nodes) != len(target.nodes) or len(u.edges) != len(target.edges):
            continue
        counter = [0, 200000]
        if next(_tree_isos(u, target, forced, counter), None) is not None:
            return
    raise AssertionError("the published nesting never came up in 3000 seeds")


def test_gen_opetope_dim1_arrow():
    ope = gen_opetope(0, GenParams(dim=1))
    assert ope.dim == 1 and all(len(t.nodes) == 1 for t in ope.trees)


def test_gen_opetope_valid_and_p_of_valid():
    for seed in range(25):
        ope = gen_opetope(seed, GenParams(dim=3))
        assert not opetope_diagnostics(ope)
        assert not dfc_diagnostics(p_of(ope).mop)


def test_gen_opetope_dim4_within_caps():
    import time

    t0 = time.perf_counter()
    ope = gen_opetope(42, GenParams(dim=4))
    assert time.perf_counter() - t0 < 1.0
    assert ope.dim == 4
    for i, t in enumerate(ope.trees[:-1]):
        dots = len(t.nodes) + sum(len(ws) for ws in ope.subdivision(i).values())
        assert dots <= 40 + 3  # cap plus the mandatory unit-tree whitedot slack


def test_gen_opetope_deterministic_bytes():
    a = serialize_doc(opetope_to_doc(gen_opetope(123, GenParams(dim=4))))
    b = serialize_doc(opetope_to_doc(gen_opetope(123, GenParams(dim=4))))
    assert a == b
