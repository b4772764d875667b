"""Seeded random generation of valid opetopes by recursive laminar nesting.

A new level is produced by scattering whitedots on the previous tree and
then growing a laminar family of connected dot sets: whitedots are exactly
the minimal empty circles, every other circle holds at least a blackdot or
a child circle, and the outermost circle encloses everything.  Reading the
family as a tree gives the next level together with an exact constellation
whose kernel rule holds by construction (and is re-verified).  The
distribution is geometric in depth and child count; no uniformity over
isomorphism classes is claimed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .trees import (
    Constellation,
    Expansion,
    Opetope,
    RootedTree,
    SubdividedTree,
    constellation_validate,
    opetope_validate,
)


@dataclass
class GenParams:
    dim: int = 3
    max_linear_nodes: int = 3
    max_whitedots_per_edge: int = 2
    child_stop: float = 0.45    # chance to stop opening further child circles
    grow_stop: float = 0.5      # chance to stop growing a child circle
    max_tree_dots: int = 40


@dataclass
class _Namer:
    level: int
    counts: dict = field(default_factory=dict)

    def fresh(self, kind: str) -> str:
        i = self.counts.get(kind, 0)
        self.counts[kind] = i + 1
        return f"{self.level}{kind}{i}"


def gen_base(rng: random.Random, max_linear_nodes: int) -> tuple[list[RootedTree], list[Constellation]]:
    """Trees of degrees 0..2 with the forced shapes; degree 2 is linear."""
    m = rng.randint(0, max_linear_nodes)
    edges2 = [f"2e{i}" for i in range(m + 1)]
    nodes2 = [f"2n{i}" for i in range(1, m + 1)]
    node_target = {f"2n{i}": f"2e{i - 1}" for i in range(1, m + 1)}
    edge_target = {f"2e{i}": f"2n{i}" for i in range(1, m + 1)}
    t2 = RootedTree(nodes2, edges2, node_target, edge_target, "2e0")
    t1 = RootedTree([edges2[-1]], ["1e0", "1e1"], {edges2[-1]: "1e0"}, {"1e1": edges2[-1]}, "1e0")
    t0 = RootedTree(["1e1"], ["0e0", "0e1"], {"1e1": "0e0"}, {"0e1": "1e1"}, "0e0")
    return [t0, t1, t2], [Constellation(t0, {}, t1), Constellation(t1, {}, t2)]


def gen_subdivision(rng: random.Random, t: RootedTree, max_whitedots_per_edge: int, namer: _Namer) -> SubdividedTree:
    """Independent uniform whitedot count per edge, fresh ascending ids."""
    w = {}
    for b in sorted(t.edges):
        count = rng.randint(0, max_whitedots_per_edge)
        if count:
            w[b] = tuple(namer.fresh("w") for _ in range(count))
    return SubdividedTree(t, w)


def _grow_connected(rng: random.Random, pool: set[str], adj: dict, size: int) -> set[str]:
    """A random connected subset of pool with at most the requested size."""
    seed = rng.choice(sorted(pool))
    grown = {seed}
    frontier = sorted(d for d in adj[seed] if d in pool)
    while frontier and len(grown) < size:
        nxt = rng.choice(frontier)
        grown.add(nxt)
        frontier = sorted({d for g in grown for d in adj[g] if d in pool and d not in grown})
    return grown


def gen_nesting(
    rng: random.Random,
    t_prime: SubdividedTree,
    namer: _Namer | None = None,
    params: GenParams | None = None,
) -> tuple[RootedTree, Constellation]:
    """A random laminar nesting of the dots, read back as the next tree."""
    params = params or GenParams()
    namer = namer or _Namer(level=99)
    exp = Expansion(t_prime)
    whitedots = set(exp.whitedots)
    dots = set(t_prime.dots())
    adj = {d: set(v) for d, v in exp.dot_adjacency().items()}

    nodes: list[str] = []
    edges: list[str] = []
    node_target: dict[str, str] = {}
    edge_target: dict[str, str] = {}

    def build_circle(members: set[str], outer_edge: str) -> None:
        if len(members) == 1 and members <= whitedots:
            (w,) = members
            nodes.append(w)
            node_target[w] = outer_edge
            return
        circle = namer.fresh("n")
        nodes.append(circle)
        node_target[circle] = outer_edge
        pool = set(members)
        children: list[set[str]] = []
        while len(pool) > 1 and rng.random() > params.child_stop:
            size = 1
            while size < len(pool) - 1 and rng.random() > params.grow_stop:
                size += 1
            group = _grow_connected(rng, pool, adj, size)
            if group >= members:
                break
            children.append(group)
            pool -= group
        # whitedots never stay direct: each becomes a minimal empty circle
        for w in sorted(pool & whitedots):
            children.append({w})
        pool -= whitedots
        for b in sorted(pool):  # direct blackdots give leaf edges
            edges.append(b)
            edge_target[b] = circle
        for group in children:
            child_edge = namer.fresh("e")
            edges.append(child_edge)
            edge_target[child_edge] = circle
            build_circle(group, child_edge)

    root_edge = namer.fresh("e")
    edges.append(root_edge)
    if dots:
        build_circle(dots, root_edge)
    u = RootedTree(nodes, edges, node_target, edge_target, root_edge)
    c = constellation_validate(Constellation(t_prime.base, dict(t_prime.w), u))
    return u, c


def gen_opetope(rng_or_seed, params: GenParams | None = None) -> Opetope:
    """A valid random opetope of the requested dimension."""
    params = params or GenParams()
    rng = rng_or_seed if isinstance(rng_or_seed, random.Random) else random.Random(rng_or_seed)
    if params.dim == 0:
        t0 = RootedTree(["0n0"], ["0e0", "0e1"], {"0n0": "0e0"}, {"0e1": "0n0"}, "0e0")
        return opetope_validate(Opetope((t0,), ()))
    if params.dim == 1:
        t1 = RootedTree(["1n0"], ["1e0", "1e1"], {"1n0": "1e0"}, {"1e1": "1n0"}, "1e0")
        t0 = RootedTree(["1e1"], ["0e0", "0e1"], {"1e1": "0e0"}, {"0e1": "1e1"}, "0e0")
        return opetope_validate(Opetope((t0, t1), (Constellation(t0, {}, t1),)))
    trees, constellations = gen_base(rng, params.max_linear_nodes)
    for level in range(3, params.dim + 1):
        namer = _Namer(level)
        top = trees[-1]
        headroom = max(0, params.max_tree_dots - len(top.nodes))
        per_edge = min(params.max_whitedots_per_edge, headroom)
        t_prime = gen_subdivision(rng, top, per_edge, namer)
        if not t_prime.dots():
            # a dotless tree admits no exact constellation into anything:
            # the next tree would need neither leaves nor nulldots
            t_prime = SubdividedTree(top, {top.root: (namer.fresh("w"),)})
        u, c = gen_nesting(rng, t_prime, namer, params)
        constellations.append(c)
        trees.append(u)
    return opetope_validate(Opetope(tuple(trees), tuple(constellations)))
