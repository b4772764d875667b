"""Brute-force re-checks of the structural facts, independent of the fast paths.

Everything here favours exhaustive scans and matrix closures over the
traversal logic used by the validators and translators, so the two routes
can certify each other.  Each fact checker returns a list of
counterexamples, empty when the fact holds.
"""

from __future__ import annotations

from itertools import permutations

from .isos import dfc_iso_failures
from .poset import LOOP, MINUS, PLUS, Dfc, ManyToOnePoset
from .to_zoom import level_tree, whitedot_order
from .trees import Constellation, Expansion, SubdividedTree


def oracle_lozenge(mop: ManyToOnePoset, z: str, y: str, x: str) -> list[tuple[str, str, str]]:
    """All completions (y', alpha', beta') of z < y < x, by scanning the whole grade."""
    out = []
    for y2 in mop.grade(mop.dim[y]):
        if y2 == y:
            continue
        alpha2, beta2 = mop.sign(y2, x), mop.sign(z, y2)
        if alpha2 is not None and beta2 is not None:
            out.append((y2, alpha2, beta2))
    return out


def all_chains(mop: ManyToOnePoset):
    """Every two-step chain (z, y, x, beta, alpha) of the poset."""
    for x in sorted(mop.cells):
        if mop.dim[x] < 1:
            continue
        for y in mop.facets(x):
            for z in mop.facets(y):
                yield z, y, x, mop.sign(z, y), mop.sign(y, x)


def oracle_strictness(mop: ManyToOnePoset, k: int, sign: str):
    """(closure pairs, strict flag, cells on cycles) via matrix closure."""
    grade = list(mop.grade(k))
    index = {x: i for i, x in enumerate(grade)}
    n = len(grade)
    reach = [[False] * n for _ in range(n)]
    if sign == MINUS:
        for x in grade:
            for t in mop.gamma[x]:
                for x2 in grade:
                    if x2 != x and t in mop.delta[x2] and t not in mop.gamma[x2]:
                        reach[index[x]][index[x2]] = True
    elif sign == PLUS:
        for w in mop.grade(k + 1):
            for x in sorted(mop.delta[w] - mop.gamma[w]):
                for x2 in sorted(mop.gamma[w] - mop.delta[w]):
                    reach[index[x]][index[x2]] = True
    else:
        raise ValueError("sign must be - or +")
    for m in range(n):
        for i in range(n):
            if reach[i][m]:
                row_i, row_m = reach[i], reach[m]
                for j in range(n):
                    if row_m[j]:
                        row_i[j] = True
    pairs = frozenset((grade[i], grade[j]) for i in range(n) for j in range(n) if reach[i][j])
    on_cycles = tuple(grade[i] for i in range(n) if reach[i][i])
    return pairs, not on_cycles, on_cycles


def oracle_kernel(c: Constellation):
    """None when the kernel rule holds, else (element, components) for a witness.

    Uses union-find labelling and an iterative descent chase, sharing no
    traversal code with constellation_diagnostics.
    """
    st = SubdividedTree(c.domain, c.subdivision)
    exp = Expansion(st)
    sigma = c.black_map()
    sigma.update(c.white_map())
    u = c.codomain
    u_edges, u_nodes = set(u.edges), set(u.nodes)

    def chase(start):
        seen = [start]
        cur, is_edge = start, start in u_edges
        while True:
            nxt = u.edge_target.get(cur) if is_edge else u.node_target.get(cur)
            if nxt is None or nxt in seen:
                return seen
            seen.append(nxt)
            cur, is_edge = nxt, not is_edge

    below = {t: set(chase(img)) for t, img in sigma.items()}

    parent = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in sorted(u_nodes | u_edges):
        pulled = sorted(t for t in sigma if x in below[t])
        if len(pulled) <= 1:
            continue
        parent.clear()
        parent.update({t: t for t in pulled})
        members = set(pulled)
        for seg in exp.tree.edges:
            lo, hi = exp.segment_ends(seg)
            if lo in members and hi in members:
                parent[find(lo)] = find(hi)
        labels = {}
        for t in pulled:
            labels.setdefault(find(t), []).append(t)
        if len(labels) > 1:
            return x, sorted(sorted(v) for v in labels.values())
    return None


def oracle_tree_paths(nodes, edges, node_target, edge_target, root) -> bool:
    """Naive rooted-tree recognition by enumerating all root-directed paths."""
    edge_set, node_set = set(edges), set(nodes)
    if len(edge_set) != len(edges) or len(node_set) != len(nodes) or edge_set & node_set:
        return False
    if root not in edge_set or root in edge_target:
        return False
    if any(node_target.get(a) not in edge_set for a in node_set):
        return False
    if any(b not in edge_set or a not in node_set for b, a in edge_target.items()):
        return False
    targets = list(node_target.values())
    if len(set(targets)) != len(targets):
        return False
    if sum(1 for b in edge_set if b not in edge_target) != 1:
        return False
    for b in edge_set:
        path, cur, is_edge = {b}, b, True
        for _ in range(len(edges) + len(nodes) + 1):
            nxt = edge_target.get(cur) if is_edge else node_target.get(cur)
            if nxt is None:
                break
            if nxt in path:
                return False
            path.add(nxt)
            cur, is_edge = nxt, not is_edge
        else:
            return False
        if cur != root:
            return False
    return True


def oracle_hexagon(dfc: Dfc) -> list[tuple]:
    """Counterexamples to the hexagon shape of paired two-step chains.

    For every pair of proper sources of b that both reach a cell e two
    dimensions down through signed chains, the geodesic between them in the
    source tree of b must be e-incident throughout, with one sign on the
    descending side and the opposite sign after the turn.
    """
    mop = dfc.mop
    bad = []
    for b in sorted(mop.cells):
        if mop.dim[b] < 2:
            continue
        srcs = [c for c in sorted(mop.delta_minus(b)) if not mop.is_loop(c)]
        if len(srcs) < 2:
            continue
        from .diagnostics import ValidationError
        from .poset import delta_tree

        try:
            tree = delta_tree(dfc, b)
        except ValidationError:
            bad.append((b, "source tree of the hexagon apex is not a tree"))
            continue
        chains_to = {
            c: {
                e
                for d in mop.facets(c)
                if mop.sign(d, c) in (MINUS, PLUS)
                for e in mop.facets(d)
                if mop.sign(e, d) in (MINUS, PLUS)
            }
            for c in srcs
        }
        for i, c in enumerate(srcs):
            for c2 in srcs[i + 1:]:
                for e in sorted(chains_to[c] & chains_to[c2]):
                    path = _tree_geodesic(tree, c, c2)
                    d_signs = [mop.sign(e, d) for d in path[1::2]]
                    if not _hexagon_pattern_ok(tree, path, d_signs):
                        bad.append((b, c, c2, e, tuple(path)))
    return bad


def _tree_geodesic(tree, c, c2) -> list[str]:
    """Alternating node/edge path between two nodes of a tree."""
    chain, chain2 = tree.descending_chain(c), tree.descending_chain(c2)
    members2 = {v: i for i, v in enumerate(chain2)}
    meet_i = next(i for i, v in enumerate(chain) if v in members2)
    return chain[: meet_i + 1] + chain2[: members2[chain[meet_i]]][::-1]


def _hexagon_pattern_ok(tree, path, d_signs) -> bool:
    if any(s is None for s in d_signs):
        return False
    # the turn sits where the geodesic stops descending
    down = 0
    while down < len(d_signs) and tree.node_target.get(path[2 * down]) == path[2 * down + 1]:
        down += 1
    first = d_signs[:down]
    second = d_signs[down:]
    if first and len(set(first)) != 1:
        return False
    if second and len(set(second)) != 1:
        return False
    if first and second and first[0] == second[0]:
        return False
    return True


def oracle_iso(c: Dfc, d: Dfc) -> list[dict]:
    """All isomorphism witnesses by per-dimension permutation search.

    A completed grade is rejected early when some boundary map into the
    previous grade fails to transport, which keeps whole-grade permutation
    enumeration feasible up to about eight cells per dimension.
    """
    mc, md = c.mop, d.mop
    if mc.dimension != md.dimension:
        return []
    grades_c = [mc.grade(k) for k in range(-1, mc.dimension + 1)]
    grades_d = [md.grade(k) for k in range(-1, md.dimension + 1)]
    if [len(g) for g in grades_c] != [len(g) for g in grades_d]:
        return []
    witnesses = []

    def grade_ok(i, fwd):
        for x in grades_c[i]:
            fx = fwd[x]
            if {fwd[y] for y in mc.delta[x]} != set(md.delta[fx]):
                return False
            if {fwd[y] for y in mc.gamma[x]} != set(md.gamma[fx]):
                return False
        return True

    def level(i, fwd):
        if i == len(grades_c):
            if not dfc_iso_failures(c, d, fwd):
                witnesses.append(dict(fwd))
            return
        for perm in permutations(grades_d[i]):
            fwd2 = dict(fwd)
            fwd2.update(zip(grades_c[i], perm))
            if i > 0 and not grade_ok(i, fwd2):
                continue
            level(i + 1, fwd2)

    level(0, {})
    return witnesses


# -- the fact suite ------------------------------------------------------


def check_confinement(dfc: Dfc) -> list[tuple]:
    mop = dfc.mop
    return [
        (z, y, x, y2)
        for z, y, x, beta, alpha in all_chains(mop)
        if beta == LOOP and alpha == PLUS
        for y2 in sorted(mop.delta[x])
        if mop.sign(z, y2) != LOOP
    ]


def check_loop_dichotomy(dfc: Dfc) -> list[tuple]:
    mop = dfc.mop
    bad = []
    for z, y, x, beta, alpha in all_chains(mop):
        if beta != LOOP or alpha != MINUS:
            continue
        signed = [c for c in oracle_lozenge(mop, z, y, x) if LOOP not in c[1:]]
        through_target = mop.sign(z, mop.gamma_cell(x)) == LOOP
        if (len(signed) == 2) == through_target or len(signed) not in (0, 2):
            bad.append((z, y, x, tuple(signed), through_target))
    return bad


def check_lambda_iterated(dfc: Dfc) -> list[tuple]:
    mop = dfc.mop
    bad = []
    for k in range(dfc.dimension):
        expected = set(mop.delta[dfc.iterated_targets[k + 1]])
        if set(dfc.lam_k[k]) != expected:
            bad.append((k, tuple(sorted(dfc.lam_k[k])), tuple(sorted(expected))))
    return bad


def check_not_source(dfc: Dfc) -> list[tuple]:
    mop = dfc.mop
    bad = []
    for k in range(dfc.dimension + 1):
        sources = {y for x in mop.grade(k + 1) for y in mop.delta_minus(x)}
        rest = set(mop.grade(k)) - sources
        if rest != {dfc.iterated_targets[k]}:
            bad.append((k, tuple(sorted(rest))))
    return bad


def check_nulldot_targets(dfc: Dfc) -> list[str]:
    mop = dfc.mop
    return [
        x
        for x in sorted(mop.sourceless())
        if mop.dim[x] >= 2 and not mop.is_loop(mop.gamma_cell(x))
    ]


def check_blackdots_leaves(dfc: Dfc) -> list[tuple]:
    bad = []
    for k in range(2, dfc.dimension + 2):
        low, high = level_tree(dfc, k), level_tree(dfc, k + 1)
        if set(low.nodes) != set(high.leaves):
            bad.append((k, tuple(low.nodes), tuple(high.leaves)))
    return bad


def check_whitedots_nulldots(dfc: Dfc) -> list[tuple]:
    bad = []
    for k in range(2, dfc.dimension + 2):
        low, high = level_tree(dfc, k), level_tree(dfc, k + 1)
        whitedots = {w for y in low.edges for w in whitedot_order(dfc, k, y)}
        if whitedots != set(high.nulldots):
            bad.append((k, tuple(sorted(whitedots)), tuple(high.nulldots)))
    return bad


def check_pencil_linearity(dfc: Dfc) -> list[tuple]:
    from .poset import path_order

    mop = dfc.mop
    bad = []
    for k in range(0, dfc.dimension + 1):
        upper = path_order(dfc, k, PLUS).pairs
        for e in mop.grade(k - 1):
            for beta, pencil in ((MINUS, mop.minus_cofaces(e)), (PLUS, mop.plus_cofaces(e))):
                for i, d in enumerate(pencil):
                    for d2 in pencil[i + 1:]:
                        if ((d, d2) in upper) == ((d2, d) in upper):
                            bad.append((e, beta, d, d2))
    return bad


def check_t2_linear(dfc: Dfc) -> list[tuple]:
    t2 = level_tree(dfc, 2)
    return [] if t2.is_linear or t2.is_unit else [(tuple(t2.nodes),)]


FACT_SUITE = {
    "confinement": check_confinement,
    "loop_dichotomy": check_loop_dichotomy,
    "lambda_iterated_target": check_lambda_iterated,
    "not_source_is_iterated_target": check_not_source,
    "nulldot_targets_are_loops": check_nulldot_targets,
    "blackdots_are_leaves": check_blackdots_leaves,
    "whitedots_are_nulldots": check_whitedots_nulldots,
    "pencil_linearity": check_pencil_linearity,
    "hexagon": oracle_hexagon,
    "t2_linear": check_t2_linear,
}


def run_fact_suite(dfc: Dfc) -> dict[str, list]:
    """Counterexample lists per structural fact; all empty on a valid complex."""
    return {name: check(dfc) for name, check in FACT_SUITE.items()}
