"""From a zoom complex to a face complex.

The opetope is first extended by a corolla and a unit tree on a fresh top
element; the cells of the complex are then the edges of the trees of
degree >= 2, with sources and target read off the nesting subtree each
cell cuts out of the tree one degree down.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import InternalError, NotAnIsomorphism, ValidationError, make
from .isos import DfcIso, OpetopeIso, make_dfc_iso, opetope_iso_failures
from .poset import Dfc, dfc_validate, mop_validate
from .trees import (
    Constellation,
    Expansion,
    Opetope,
    RootedTree,
    SubdividedTree,
    constellation_validate,
    descendant_dots,
    opetope_validate,
    tree_diagnostics,
    tree_validate,
)


def _fresh(name: str, used: set[str]) -> str:
    while name in used:
        name += "'"
    used.add(name)
    return name


@dataclass(frozen=True)
class ExtendedZoom:
    """An opetope with the two forced top levels appended."""

    base: Opetope
    trees: tuple[RootedTree, ...]
    constellations: tuple[Constellation, ...]
    top: str
    ext_root: str

    @property
    def base_dim(self) -> int:
        return self.base.dim

    @property
    def bottom(self) -> str:
        return self.trees[1].root

    def subdivision_on(self, i: int) -> dict:
        """Subdivision carried by tree i (from the constellation into tree i+1)."""
        if i < len(self.constellations):
            return self.constellations[i].subdivision
        return {}


def extend(ope: Opetope) -> ExtendedZoom:
    """Append the corolla on a fresh top element and the unit tree above it."""
    if isinstance(ope, ExtendedZoom):
        raise ValueError("input is already an extended zoom complex")
    ope = opetope_validate(ope)
    n = ope.dim
    used = set()
    for t in ope.trees:
        used |= set(t.nodes) | set(t.edges)
    top = _fresh("__top", used)
    ext_root = _fresh("__ext_root", used)
    s_n = ope.trees[-1]
    corolla = RootedTree(
        (top,),
        tuple(sorted(s_n.nodes)) + (ext_root,),
        {top: ext_root},
        {b: top for b in s_n.nodes},
        ext_root,
    )
    unit = RootedTree((), (top,), {}, {}, top)
    # a unit top tree has no blackdot, so the top element itself must
    # appear as the only whitedot for the appended constellation to be exact
    v_n = {} if s_n.nodes else {s_n.root: (top,)}
    c_up = constellation_validate(Constellation(s_n, v_n, corolla))
    c_top = constellation_validate(Constellation(corolla, {}, unit))
    return ExtendedZoom(
        ope, ope.trees + (corolla, unit), ope.constellations + (c_up, c_top), top, ext_root
    )


# -- nesting subtrees ---------------------------------------------------


@dataclass(frozen=True)
class NestingSubtree:
    """The subtree of tree k+1 cut out by the dots descending to a cell.

    The tree's edges are renamed to the original edges their segments came
    from; whitedots inside the cut are recorded per edge in v.
    """

    owner: str
    dots: frozenset[str]
    tree: RootedTree
    v: dict
    root_name: str
    leaf_names: tuple[str, ...]

    @property
    def is_unit(self) -> bool:
        return self.tree.is_unit


def nesting_subtree(ez: ExtendedZoom, k: int, x: str) -> NestingSubtree:
    """The nesting subtree of the degree-(k+1) tree under the edge x of tree k+2."""
    s_hi = ez.trees[k + 2]
    s_lo = ez.trees[k + 1]
    if x not in set(s_hi.edges):
        raise ValueError(f"{x!r} is not an edge of tree {k + 2}")
    st = SubdividedTree(s_lo, ez.subdivision_on(k + 1))
    exp = Expansion(st)
    blackdots = set(s_lo.nodes)
    whitedots = set(exp.whitedots)
    dots = descendant_dots(s_hi, x) & (blackdots | whitedots)

    # group segments through the whitedots of the cut; each group is one
    # edge of the subtree and stays inside a single original edge
    parent: dict[str, str] = {s: s for s in exp.tree.edges}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(s1, s2):
        parent[find(s1)] = find(s2)

    for w in sorted(dots & whitedots):
        below = exp.tree.node_target[w]
        for above in exp.tree.sources_of(w):
            union(above, below)

    groups: dict[str, list[str]] = {}
    for s in exp.tree.edges:
        groups.setdefault(find(s), []).append(s)

    kept: dict[str, dict] = {}
    for rep, segs in sorted(groups.items()):
        segs.sort(key=lambda s: exp.origin[s][1])
        lo_end, _ = exp.segment_ends(segs[0])
        _, hi_end = exp.segment_ends(segs[-1])
        inner_w = [exp.tree.edge_target[s] for s in segs[1:]]
        touches = bool(inner_w) or (lo_end in dots) or (hi_end in dots)
        if not touches:
            continue
        names = {exp.origin[s][0] for s in segs}
        if len(names) != 1:
            raise InternalError(f"segment group of {x!r} crosses original edges {sorted(names)}")
        kept[rep] = {
            "name": names.pop(),
            "target": lo_end if lo_end in dots and lo_end in blackdots else None,
            "source": hi_end if hi_end in dots and hi_end in blackdots else None,
            "whitedots": tuple(inner_w),
        }

    nodes = sorted(dots & blackdots)
    names = [info["name"] for info in kept.values()]
    if len(set(names)) != len(names):
        raise ValidationError([make("DisconnectedNesting", [x], "kernel rule", f"cut of {x!r} reuses an edge name; upstream constellation invalid")])
    edges = sorted(names)
    node_target, edge_target, v = {}, {}, {}
    roots = []
    for info in kept.values():
        if info["target"] is not None:
            edge_target[info["name"]] = info["target"]
        else:
            roots.append(info["name"])
        if info["source"] is not None:
            node_target[info["source"]] = info["name"]
        if info["whitedots"]:
            v[info["name"]] = info["whitedots"]
    if len(roots) != 1:
        raise ValidationError([make("DisconnectedNesting", [x, *sorted(roots)], "kernel rule", f"cut of {x!r} has {len(roots)} root candidates")])
    diags = tree_diagnostics(nodes, edges, node_target, edge_target, roots[0])
    if diags:
        raise ValidationError([make("DisconnectedNesting", [x], "kernel rule", f"cut of {x!r} is not a tree")] + diags)
    tree = RootedTree(nodes, edges, node_target, edge_target, roots[0])
    return NestingSubtree(x, frozenset(dots), tree, v, tree.root, tree.leaves)


# -- the complex of an opetope ------------------------------------------


@dataclass(frozen=True)
class PImage:
    """A complex produced from an opetope, with its extension kept around."""

    ez: ExtendedZoom
    dfc: Dfc


def p_image(ope: Opetope) -> PImage:
    ez = extend(ope)
    n = ez.base_dim
    records = [{"id": ez.bottom, "dim": -1, "delta": [], "gamma": []}]
    subtree: dict[str, NestingSubtree] = {}
    for k in range(n + 1):
        for x in sorted(ez.trees[k + 2].edges):
            if k == 0:
                records.append({"id": x, "dim": 0, "delta": [], "gamma": [ez.bottom]})
                continue
            st = nesting_subtree(ez, k, x)
            subtree[x] = st
            records.append({"id": x, "dim": k, "delta": sorted(set(st.leaf_names)), "gamma": [st.root_name]})

    by_id = {rec["id"]: rec for rec in records}
    local_orders = []
    for k in range(2, n + 1):
        for x in sorted(ez.trees[k + 2].edges):
            loops_by_base: dict[str, list[str]] = {}
            for y in by_id[x]["delta"]:
                rec = by_id[y]
                if rec["delta"] == rec["gamma"]:
                    loops_by_base.setdefault(rec["gamma"][0], []).append(y)
            for z, ys in sorted(loops_by_base.items()):
                if len(ys) < 2:
                    continue
                # the loops' cuts are disjoint whitedot runs on the edge z
                # of the tree one degree down; leftmost position decides
                sub = ez.subdivision_on(k)
                position = {w: i for ws in sub.values() for i, w in enumerate(ws)}
                ys.sort(key=lambda y: min(position[w] for w in subtree[y].dots))
                local_orders.append({"x": x, "z": z, "order": ys})

    doc = {"cells": records, "local_orders": local_orders}
    try:
        dfc = dfc_validate(mop_validate(doc), allow_point=n == 0)
    except ValidationError as err:
        raise InternalError(f"complex of a valid opetope failed to validate: {err}") from err
    return PImage(ez, dfc)


def p_of(ope: Opetope) -> Dfc:
    """The face complex of an opetope; valid by construction, revalidated anyway."""
    return p_image(ope).dfc


def sigma_tree(pz: PImage, x: str) -> RootedTree:
    """Source tree of a cell assembled from the nesting subtrees of its sources."""
    dfc, ez = pz.dfc, pz.ez
    mop = dfc.mop
    k = mop.dim[x]
    if k < 2:
        raise ValueError(f"source trees need dimension >= 2, got {x!r}")
    if mop.is_loop(x):
        raise ValueError(f"{x!r} is a loop cell")
    cuts = {y: nesting_subtree(ez, k - 1, y) for y in sorted(mop.delta[x])}
    nodes = sorted(y for y, st in cuts.items() if not st.is_unit)
    root = mop.gamma_cell(mop.gamma_cell(x))
    edges = sorted({root} | {z for y in nodes for z in (set(cuts[y].leaf_names) | {cuts[y].root_name})})
    node_target = {y: cuts[y].root_name for y in nodes}
    edge_target = {}
    for z in edges:
        owners = [y for y in nodes if z in cuts[y].leaf_names]
        if len(owners) > 1:
            raise InternalError(f"edge {z!r} is a leaf of two source cuts under {x!r}")
        if owners:
            edge_target[z] = owners[0]
    return tree_validate(RootedTree(nodes, edges, node_target, edge_target, root))


def p_map(f: OpetopeIso) -> DfcIso:
    """The cell map induced by a level-wise opetope isomorphism."""
    failures = opetope_iso_failures(f.source, f.target, f.levels)
    if failures:
        raise NotAnIsomorphism(failures)
    src, tgt = p_image(f.source), p_image(f.target)
    n = src.ez.base_dim
    fwd = {src.ez.bottom: tgt.ez.bottom, src.ez.top: tgt.ez.top, src.ez.ext_root: tgt.ez.ext_root}
    for k in range(n + 1):
        for x in src.ez.trees[k + 2].edges:
            if k == n:
                continue  # the top element, already mapped
            if k == n - 1:
                if x != src.ez.ext_root:
                    fwd[x] = f.levels[n].nodes[x]  # nodes of the top original tree
            else:
                fwd[x] = f.levels[k + 2].edges[x]
    return make_dfc_iso(src.dfc, tgt.dfc, fwd)
