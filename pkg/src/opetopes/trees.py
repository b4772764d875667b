"""Rooted trees, subdivisions, constellations and zoom complexes.

Trees grow upward from a distinguished targetless root edge: each node has
exactly one target edge below it, each edge at most one target node below
it.  Sourceless edges are leaves, sourceless nodes are nulldots.  A
subdivision puts an ordered run of whitedots on each edge; a constellation
maps the dots of a subdivided tree into the next tree subject to the
kernel (connectivity) rule.  An opetope is an exact zoom complex with
constrained low-degree trees.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagnostics import Diagnostic, ValidationError, make, sort_key


class RootedTree:
    """Finite rooted tree with first-class edge identities."""

    def __init__(self, nodes, edges, node_target, edge_target, root):
        self.nodes = tuple(nodes)
        self.edges = tuple(edges)
        self.node_target = dict(node_target)   # node -> edge below it
        self.edge_target = dict(edge_target)   # edge -> node below it
        self.root = root
        self._source_node = {}                 # edge -> node above it
        for a, b in self.node_target.items():
            self._source_node.setdefault(b, a)
        self._sources = {a: [] for a in self.nodes}
        for b in sorted(self.edges):
            a = self.edge_target.get(b)
            if a in self._sources:
                self._sources[a].append(b)

    @property
    def leaves(self) -> tuple[str, ...]:
        return tuple(b for b in sorted(self.edges) if b not in self._source_node)

    @property
    def nulldots(self) -> tuple[str, ...]:
        return tuple(a for a in sorted(self.nodes) if not self._sources[a])

    def sources_of(self, a: str) -> tuple[str, ...]:
        """Edges whose target node is a, in sorted order (trees are not planar)."""
        return tuple(self._sources[a])

    def source_node_of(self, b: str) -> str | None:
        return self._source_node.get(b)

    def descending_chain(self, x: str) -> list[str]:
        """Alternating element chain from x down to the root; x may be a node or an edge."""
        chain = [x]
        cur, is_edge = x, x in set(self.edges)
        bound = len(self.edges) + len(self.nodes) + 1
        for _ in range(bound):
            nxt = self.edge_target.get(cur) if is_edge else self.node_target.get(cur)
            if nxt is None:
                return chain
            chain.append(nxt)
            cur, is_edge = nxt, not is_edge
        raise ValidationError([make("Cycle", [x], "rooted tree", f"no finite descending path from {x!r}")])

    @property
    def is_unit(self) -> bool:
        return not self.nodes and len(self.edges) == 1

    @property
    def is_corolla(self) -> bool:
        return len(self.nodes) == 1

    @property
    def is_linear(self) -> bool:
        return all(len(self._sources[a]) == 1 for a in self.nodes) and len(self.edges) == len(self.nodes) + 1

    def element_count(self) -> int:
        return len(self.nodes) + len(self.edges)


def tree_diagnostics(nodes, edges, node_target, edge_target, root) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    nodes, edges = list(nodes), list(edges)
    node_set, edge_set = set(nodes), set(edges)
    if len(node_set) != len(nodes) or len(edge_set) != len(edges):
        out.append(make("DuplicateId", [], "tree ids", "repeated node or edge id"))
    clash = sorted(node_set & edge_set)
    if clash:
        out.append(make("IdClash", clash, "tree ids", "ids used both as node and edge"))
    for a in sorted(node_set):
        b = node_target.get(a)
        if b is None:
            out.append(make("NodeWithoutTarget", [a], "rooted tree", f"node {a!r} has no target edge"))
        elif b not in edge_set:
            out.append(make("DanglingId", [a, str(b)], "rooted tree", f"target edge of {a!r} is unknown"))
    for b, a in sorted(edge_target.items()):
        if b not in edge_set or a not in node_set:
            out.append(make("DanglingId", [str(b), str(a)], "rooted tree", f"edge target entry ({b!r}, {a!r}) references unknown ids"))
    seen_targets = set()
    for a in sorted(node_set):
        b = node_target.get(a)
        if b in seen_targets:
            out.append(make("SharedTargetEdge", [str(b)], "rooted tree", f"edge {b!r} is the target edge of two nodes"))
        seen_targets.add(b)
    if root not in edge_set:
        out.append(make("DanglingId", [str(root)], "rooted tree", "root is not an edge"))
        return sorted(set(out), key=sort_key)
    targetless = sorted(b for b in edge_set if b not in edge_target)
    if root in edge_target:
        out.append(make("RootHasTarget", [root], "rooted tree", "the root edge has a target node"))
    if len(targetless) > 1:
        out.append(make("MultipleRoots", targetless, "rooted tree", "more than one targetless edge"))
    if out:
        return sorted(set(out), key=sort_key)

    tree = RootedTree(nodes, edges, node_target, edge_target, root)
    for b in sorted(edge_set):
        try:
            chain = tree.descending_chain(b)
        except ValidationError as err:
            return sorted(set(out + err.diagnostics), key=sort_key)
        if chain[-1] != root:
            out.append(make("UnreachableEdge", [b], "rooted tree", f"edge {b!r} does not descend to the root"))
    return sorted(set(out), key=sort_key)


def tree_validate(doc) -> RootedTree:
    """RootedTree from a document dict or from an existing tree's fields."""
    if isinstance(doc, RootedTree):
        fields_ = (doc.nodes, doc.edges, doc.node_target, doc.edge_target, doc.root)
    else:
        fields_ = (doc.get("nodes", []), doc.get("edges", []), doc.get("node_target", {}), doc.get("edge_target", {}), doc.get("root"))
    diags = tree_diagnostics(*fields_)
    if diags:
        raise ValidationError(diags)
    return RootedTree(*fields_)


# -- subdivisions and expansions ---------------------------------------


@dataclass(frozen=True)
class SubdividedTree:
    """A rooted tree with an ordered run of whitedots on each edge."""

    base: RootedTree
    w: dict  # edge -> tuple of whitedot ids, ascending from the target end

    def whitedots(self) -> tuple[str, ...]:
        return tuple(d for b in sorted(self.base.edges) for d in self.w.get(b, ()))

    def dots(self) -> tuple[str, ...]:
        return tuple(sorted(self.base.nodes)) + self.whitedots()


def subdivided_diagnostics(st: SubdividedTree) -> list[Diagnostic]:
    out = []
    used = set(st.base.nodes) | set(st.base.edges)
    for b in sorted(st.w):
        if b not in set(st.base.edges):
            out.append(make("DanglingId", [b], "subdivision", f"subdivision names unknown edge {b!r}"))
    seen = set()
    for d in st.whitedots():
        if d in used or d in seen:
            out.append(make("IdClash", [d], "subdivision", f"whitedot id {d!r} collides with another id"))
        seen.add(d)
    return sorted(set(out), key=sort_key)


class Expansion:
    """The expansion of a subdivided tree: whitedots promoted to nodes.

    Edges of the expansion are segments; origin maps a segment back to
    (original edge, index from the target end).
    """

    def __init__(self, st: SubdividedTree):
        base = st.base
        used = set(base.nodes) | set(base.edges) | set(st.whitedots())
        nodes = list(base.nodes)
        edges: list[str] = []
        node_target = dict(base.node_target)
        edge_target = dict(base.edge_target)
        origin: dict[str, tuple[str, int]] = {}
        segments_of: dict[str, list[str]] = {}
        for b in sorted(base.edges):
            dots = list(st.w.get(b, ()))
            segs = []
            for i in range(len(dots) + 1):
                s = f"{b}#{i}"
                while s in used:
                    s += "'"
                used.add(s)
                segs.append(s)
                origin[s] = (b, i)
            segments_of[b] = segs
            edges.extend(segs)
            nodes.extend(dots)
            # lowest segment inherits b's target node, topmost its source node
            tgt = base.edge_target.get(b)
            edge_target.pop(b, None)
            if tgt is not None:
                edge_target[segs[0]] = tgt
            src = base.source_node_of(b)
            if src is not None:
                node_target[src] = segs[-1]
            for i, d in enumerate(dots):
                node_target[d] = segs[i]
                edge_target[segs[i + 1]] = d
        root_seg = segments_of[base.root][0]
        self.tree = RootedTree(nodes, edges, node_target, edge_target, root_seg)
        self.origin = origin
        self.segments_of = {b: tuple(s) for b, s in segments_of.items()}
        self.whitedots = frozenset(st.whitedots())

    def segment_ends(self, seg: str) -> tuple[str | None, str | None]:
        """(dot below, dot above) of a segment; None at the boundary."""
        return self.tree.edge_target.get(seg), self.tree.source_node_of(seg)

    def dot_adjacency(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, set[str]] = {d: set() for d in self.tree.nodes}
        for seg in self.tree.edges:
            lo, hi = self.segment_ends(seg)
            if lo is not None and hi is not None:
                adj[lo].add(hi)
                adj[hi].add(lo)
        return {d: tuple(sorted(s)) for d, s in adj.items()}


def subdivided_as_tree(st: SubdividedTree) -> RootedTree:
    """The expansion as a plain rooted tree; fails loudly if not a tree."""
    diags = subdivided_diagnostics(st)
    if diags:
        raise ValidationError(diags)
    return tree_validate(Expansion(st).tree)


# -- constellations ----------------------------------------------------


@dataclass(frozen=True)
class Constellation:
    """A constellation between two rooted trees.

    sigma_black maps the blackdots (nodes) of the subdivided domain to the
    leaves of the codomain, sigma_white the whitedots to the nulldots;
    None means the identity (the exact case).
    """

    domain: RootedTree
    subdivision: dict
    codomain: RootedTree
    sigma_black: dict | None = None
    sigma_white: dict | None = None

    def subdivided_domain(self) -> SubdividedTree:
        return SubdividedTree(self.domain, self.subdivision)

    def black_map(self) -> dict:
        if self.sigma_black is not None:
            return dict(self.sigma_black)
        return {a: a for a in self.domain.nodes}

    def white_map(self) -> dict:
        if self.sigma_white is not None:
            return dict(self.sigma_white)
        return {d: d for d in self.subdivided_domain().whitedots()}

    def is_exact(self) -> bool:
        return all(k == v for k, v in self.black_map().items()) and all(
            k == v for k, v in self.white_map().items()
        )


def _bijection_diagnostics(name: str, mapping: dict, domain, codomain) -> list[Diagnostic]:
    out = []
    domain, codomain = set(domain), set(codomain)
    if set(mapping) != domain or set(mapping.values()) != codomain or len(set(mapping.values())) != len(mapping):
        out.append(make("SigmaNotBijective", sorted(domain ^ set(mapping)) or sorted(codomain ^ set(mapping.values())), name, f"{name} is not a bijection onto its expected codomain"))
    return out


def descendant_dots(u: RootedTree, x: str) -> frozenset[str]:
    """Leaves and nulldots of u whose descending path passes through x."""
    out = set()
    for d in list(u.leaves) + list(u.nulldots):
        if x in u.descending_chain(d):
            out.add(d)
    return frozenset(out)


def constellation_diagnostics(c: Constellation) -> list[Diagnostic]:
    out = subdivided_diagnostics(c.subdivided_domain())
    if out:
        return out
    st = c.subdivided_domain()
    exp = Expansion(st)
    black, white = c.black_map(), c.white_map()
    out.extend(_bijection_diagnostics("sigma_black", black, st.base.nodes, c.codomain.leaves))
    out.extend(_bijection_diagnostics("sigma_white", white, st.whitedots(), c.codomain.nulldots))
    if out:
        return sorted(set(out), key=sort_key)

    sigma = dict(black)
    sigma.update(white)
    adj = exp.dot_adjacency()
    # descending chains in the codomain, per dot image
    chains = {t: set(c.codomain.descending_chain(sigma[t])) for t in sigma}
    for x in [*sorted(c.codomain.nodes), *sorted(c.codomain.edges)]:
        pulled = sorted(t for t in sigma if x in chains[t])
        if len(pulled) <= 1:
            continue
        components = _components(pulled, adj)
        if len(components) > 1:
            out.append(make("KernelRuleViolated", [x] + pulled, "kernel rule", f"dots over {x!r} split into {len(components)} components"))
    return sorted(set(out), key=sort_key)


def _components(members, adj) -> list[list[str]]:
    member_set = set(members)
    seen: set[str] = set()
    comps = []
    for m in members:
        if m in seen:
            continue
        comp = []
        stack = [m]
        seen.add(m)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w in member_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def constellation_validate(c: Constellation) -> Constellation:
    diags = constellation_diagnostics(c)
    if diags:
        raise ValidationError(diags)
    return c


# -- zoom complexes and opetopes ---------------------------------------


@dataclass(frozen=True)
class Opetope:
    """An exact zoom complex with the base-shape constraints of an opetope."""

    trees: tuple[RootedTree, ...]
    constellations: tuple[Constellation, ...]
    degenerate: bool = field(default=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.trees) - 1

    def subdivision(self, i: int) -> dict:
        """The subdivision carried by tree i (empty for the top tree)."""
        if i + 1 <= self.dim:
            return self.constellations[i].subdivision
        return {}


def _same_tree(a: RootedTree, b: RootedTree) -> bool:
    return (
        sorted(a.nodes) == sorted(b.nodes)
        and sorted(a.edges) == sorted(b.edges)
        and a.node_target == b.node_target
        and a.edge_target == b.edge_target
        and a.root == b.root
    )


def _is_arrow_shape(t: RootedTree) -> bool:
    return len(t.nodes) == 1 and len(t.edges) == 2


def opetope_diagnostics(ope: Opetope) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    n = ope.dim
    if len(ope.constellations) != n:
        out.append(make("BadShape", [], "zoom complex", f"{n + 1} trees need {n} constellations, got {len(ope.constellations)}"))
        return out
    for i, t in enumerate(ope.trees):
        out.extend(tree_diagnostics(t.nodes, t.edges, t.node_target, t.edge_target, t.root))
    if out:
        return sorted(set(out), key=sort_key)
    for i, c in enumerate(ope.constellations):
        if not (_same_tree(c.domain, ope.trees[i]) and _same_tree(c.codomain, ope.trees[i + 1])):
            out.append(make("BadShape", [], "zoom complex", f"constellation {i + 1} does not link trees {i} and {i + 1}"))
            return out
        if not c.is_exact():
            out.append(make("NonExactConstellation", [], "opetope", f"constellation {i + 1} has non-identity structure maps"))
        out.extend(constellation_diagnostics(c))
    # cells of distinct degrees must not share ids (edge with edge, node with node)
    for i in range(len(ope.trees)):
        for j in range(i + 1, len(ope.trees)):
            ee = sorted(set(ope.trees[i].edges) & set(ope.trees[j].edges))
            nn = sorted(set(ope.trees[i].nodes) & set(ope.trees[j].nodes))
            for clash in ee + nn:
                out.append(make("IdClash", [clash], "zoom complex", f"id {clash!r} used at degrees {i} and {j}"))
    if not _is_arrow_shape(ope.trees[0]):
        out.append(make("BadBaseTree", [ope.trees[0].root], "opetope base", "degree-0 tree must have one root, one leaf and one node"))
    if n >= 1 and not _is_arrow_shape(ope.trees[1]):
        out.append(make("BadBaseTree", [ope.trees[1].root], "opetope base", "degree-1 tree must have one root, one leaf and one node"))
    if n >= 2 and not (ope.trees[2].is_linear or ope.trees[2].is_unit):
        out.append(make("NonLinearT2", [ope.trees[2].root], "opetope base", "degree-2 tree must be linear"))
    return sorted(set(out), key=sort_key)


def opetope_validate(ope: Opetope) -> Opetope:
    diags = opetope_diagnostics(ope)
    if diags:
        raise ValidationError(diags)
    degenerate = ope.dim >= 2 and ope.trees[2].is_unit
    return Opetope(ope.trees, ope.constellations, degenerate=degenerate)
