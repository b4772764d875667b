"""Many-to-one posets and the face complexes built on them.

A many-to-one poset is a finite graded set of cells; each cell x of dimension >= 0 has a
set of sources delta(x) and a single target gamma(x), one dimension down.
A facet relation y < x carries a sign: minus (y a proper source), plus
(y the proper target) or loop (y simultaneously source and target).  A face complex
is such a poset with a greatest element, plus-cofaces for loops, oriented thinness
(unique sign-rule lozenge completions) and acyclic facet flow.  Validators
collect every violation instead of stopping at the first one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagnostics import Diagnostic, ValidationError, make, sort_key
from .trees import RootedTree, tree_diagnostics

MINUS = "-"
PLUS = "+"
LOOP = "o"

_SIGN_VALUE = {MINUS: -1, PLUS: 1, LOOP: 0}
_VALUE_SIGN = {-1: MINUS, 1: PLUS, 0: LOOP}


def sign_product(a: str, b: str) -> str:
    """Product in the sign monoid {+1, -1, 0}."""
    return _VALUE_SIGN[_SIGN_VALUE[a] * _SIGN_VALUE[b]]


def sign_negate(a: str) -> str:
    return _VALUE_SIGN[-_SIGN_VALUE[a]]


class ManyToOnePoset:
    """Graded cell set with source/target facet maps and local loop orders.

    Immutable by convention after construction; build through mop_validate.
    local_orders maps (x, z) to the stored order of the loops on z among
    the sources of x.
    """

    def __init__(self, cells, dim, delta, gamma, local_orders):
        self.cells = tuple(cells)
        self.dim = dict(dim)
        self.delta = {c: frozenset(delta.get(c, ())) for c in self.cells}
        self.gamma = {c: frozenset(gamma.get(c, ())) for c in self.cells}
        self.local_orders = {k: tuple(v) for k, v in local_orders.items()}

        self._by_dim: dict[int, list[str]] = {}
        for c in sorted(self.cells):
            self._by_dim.setdefault(self.dim[c], []).append(c)
        self._minus_cofaces: dict[str, list[str]] = {c: [] for c in self.cells}
        self._plus_cofaces: dict[str, list[str]] = {c: [] for c in self.cells}
        self._loop_cofaces: dict[str, list[str]] = {c: [] for c in self.cells}
        for x in sorted(self.cells):
            for y in sorted(self.delta[x] | self.gamma[x]):
                if y not in self._minus_cofaces:
                    continue  # dangling id; only during validation
                s = self.sign(y, x)
                if s == MINUS:
                    self._minus_cofaces[y].append(x)
                elif s == PLUS:
                    self._plus_cofaces[y].append(x)
                else:
                    self._loop_cofaces[y].append(x)

    # -- basic queries -------------------------------------------------

    @property
    def bottom(self) -> str:
        return self._by_dim[-1][0]

    @property
    def dimension(self) -> int:
        return max(self.dim.values())

    def grade(self, k: int) -> tuple[str, ...]:
        return tuple(self._by_dim.get(k, ()))

    def sign(self, y: str, x: str) -> str | None:
        """Sign of the facet relation y < x, or None when unrelated."""
        in_delta = y in self.delta[x]
        in_gamma = y in self.gamma[x]
        if in_delta and in_gamma:
            return LOOP
        if in_delta:
            return MINUS
        if in_gamma:
            return PLUS
        return None

    def facets(self, x: str) -> tuple[str, ...]:
        return tuple(sorted(self.delta[x] | self.gamma[x]))

    def delta_minus(self, x: str) -> frozenset[str]:
        return self.delta[x] - self.gamma[x]

    def gamma_plus(self, x: str) -> frozenset[str]:
        return self.gamma[x] - self.delta[x]

    def gamma_cell(self, x: str) -> str:
        """The unique target of x (dim(x) >= 0)."""
        (t,) = self.gamma[x]
        return t

    def is_loop(self, x: str) -> bool:
        return bool(self.delta[x]) and self.delta[x] == self.gamma[x]

    def minus_cofaces(self, y: str) -> tuple[str, ...]:
        return tuple(self._minus_cofaces[y])

    def plus_cofaces(self, y: str) -> tuple[str, ...]:
        return tuple(self._plus_cofaces[y])

    def loop_cofaces(self, y: str) -> tuple[str, ...]:
        return tuple(self._loop_cofaces[y])

    def cofaces(self, y: str) -> tuple[str, ...]:
        return tuple(sorted(self._minus_cofaces[y] + self._plus_cofaces[y] + self._loop_cofaces[y]))

    def lam(self) -> frozenset[str]:
        """Cells that are never the proper target of another cell."""
        strict_targets = {y for x in self.cells for y in self.gamma_plus(x)}
        return frozenset(c for c in self.cells if c not in strict_targets and self.dim[c] >= 0)

    def loop_cells(self) -> frozenset[str]:
        return frozenset(c for c in self.cells if self.is_loop(c))

    def sourceless(self) -> frozenset[str]:
        return frozenset(c for c in self.cells if self.dim[c] >= 0 and not self.delta[c])

    def loop_chain_set(self, x: str, z: str) -> tuple[str, ...]:
        """All y with z loop-below y and y a proper source of x, sorted."""
        return tuple(sorted(y for y in self.delta_minus(x) if self.sign(z, y) == LOOP))


def relation_sign(mop: ManyToOnePoset, y: str, x: str) -> str | None:
    return mop.sign(y, x)


# -- MOP validation ----------------------------------------------------


def _structural_diagnostics(doc: dict) -> tuple[list[Diagnostic], dict]:
    """Id-level checks on the raw document; returns (diagnostics, cleaned doc)."""
    out: list[Diagnostic] = []
    cells = doc.get("cells", [])
    seen: set[str] = set()
    order: list[str] = []
    for rec in cells:
        cid = rec.get("id")
        if not isinstance(cid, str) or not cid:
            out.append(make("BadId", [str(cid)], "cell ids", "cell id must be a non-empty string"))
            continue
        if cid in seen:
            out.append(make("DuplicateId", [cid], "cell ids", f"cell id {cid!r} appears twice"))
            continue
        seen.add(cid)
        order.append(cid)
    dim, delta, gamma = {}, {}, {}
    for rec in cells:
        cid = rec.get("id")
        if cid not in seen:
            continue
        d = rec.get("dim")
        if not isinstance(d, int) or d < -1:
            out.append(make("BadDimension", [cid], "gradation", f"dim of {cid!r} must be an integer >= -1"))
            d = -1
        dim[cid] = d
        for key, store in (("delta", delta), ("gamma", gamma)):
            refs = rec.get(key, [])
            ok = []
            local_seen = set()
            for r in refs:
                if r not in seen:
                    out.append(make("DanglingId", [cid, str(r)], "cell ids", f"{key} of {cid!r} references unknown cell {r!r}"))
                elif r in local_seen:
                    out.append(make("DuplicateFacet", [cid, r], "cell ids", f"{key} of {cid!r} lists {r!r} twice"))
                else:
                    local_seen.add(r)
                    ok.append(r)
            store[cid] = ok
    local_orders = {}
    for rec in doc.get("local_orders", []):
        x, z, seq = rec.get("x"), rec.get("z"), rec.get("order", [])
        bad = [r for r in [x, z, *seq] if r not in seen]
        if bad:
            out.append(make("DanglingId", [str(b) for b in bad], "local orders", "local order references unknown cells"))
            continue
        if (x, z) in local_orders:
            out.append(make("DuplicateLocalOrder", [x, z], "local orders", f"two local orders stored at ({x!r}, {z!r})"))
            continue
        local_orders[(x, z)] = list(seq)
    cleaned = {"order": order, "dim": dim, "delta": delta, "gamma": gamma, "local_orders": local_orders}
    return out, cleaned


def mop_diagnostics(doc: dict) -> list[Diagnostic]:
    """Every violation of the many-to-one poset axioms in the document."""
    out, c = _structural_diagnostics(doc)
    mop = ManyToOnePoset(c["order"], c["dim"], c["delta"], c["gamma"], c["local_orders"])
    if not mop.cells:
        out.append(make("BottomMissing", [], "bottom cell", "empty cell set"))
        return sorted(set(out), key=sort_key)

    bottoms = mop.grade(-1)
    if len(bottoms) == 0:
        out.append(make("BottomMissing", [], "bottom cell", "no cell of dimension -1"))
    elif len(bottoms) > 1:
        out.append(make("BottomNotUnique", bottoms, "bottom cell", "more than one cell of dimension -1"))
    for b in bottoms:
        if mop.delta[b] or mop.gamma[b]:
            out.append(make("BottomBoundary", [b], "bottom cell", "the bottom cell must have empty delta and gamma"))

    for x in sorted(mop.cells):
        k = mop.dim[x]
        if k < 0:
            continue
        if len(mop.gamma[x]) != 1:
            out.append(make("GammaNotSingleton", [x], "gamma is a singleton", f"gamma of {x!r} has {len(mop.gamma[x])} elements"))
        for y in mop.facets(x):
            if y in mop.dim and mop.dim[y] != k - 1:
                out.append(make("GradationBroken", [x, y], "gradation", f"facet {y!r} of {x!r} is not one dimension down"))
        inter = mop.delta[x] & mop.gamma[x]
        if inter and mop.delta[x] != mop.gamma[x]:
            out.append(make("LoopAxiomViolated", [x], "delta meets gamma only on loops", f"delta and gamma of {x!r} overlap without being equal"))
        if k == 0:
            if bottoms and (mop.gamma[x] != frozenset(bottoms[:1]) or mop.delta[x]):
                out.append(make("ZeroCellBoundary", [x], "0-cells sit on the bottom", f"0-cell {x!r} must have empty delta and the bottom cell as gamma"))

    out.extend(_local_order_diagnostics(mop))
    return sorted(set(out), key=sort_key)


def _local_order_diagnostics(mop: ManyToOnePoset) -> list[Diagnostic]:
    out = []
    lam = mop.lam()
    required: set[tuple[str, str]] = set()
    for x in sorted(lam):
        if mop.dim[x] < 1:
            continue
        for z in sorted({z for y in mop.facets(x) for z in mop.facets(y)}):
            if len(mop.loop_chain_set(x, z)) >= 2:
                required.add((x, z))
    for key in sorted(required - set(mop.local_orders)):
        x, z = key
        out.append(make("LocalOrderMissing", [x, z], "local order", f"{x!r} has several loop sources on {z!r} but no stored order"))
    for (x, z), seq in sorted(mop.local_orders.items()):
        expected = set(mop.loop_chain_set(x, z))
        if len(set(seq)) != len(seq) or set(seq) != expected:
            out.append(make("LocalOrderInvalid", [x, z, *seq], "local order", f"stored order at ({x!r}, {z!r}) is not an enumeration of the loop sources"))
    return out


def mop_validate(doc: dict) -> ManyToOnePoset:
    """Validated MOP from a document, or ValidationError with every violation."""
    diags = mop_diagnostics(doc)
    if diags:
        raise ValidationError(diags)
    _, c = _structural_diagnostics(doc)
    return ManyToOnePoset(c["order"], c["dim"], c["delta"], c["gamma"], c["local_orders"])


# -- DFC validation ----------------------------------------------------


@dataclass(frozen=True)
class Dfc:
    """A validated face complex.

    iterated_targets[j] is the j-dimensional cell reached from the greatest
    element by iterating gamma; the strata record, per dimension, the cells
    that are never proper targets (lam), the loops (omega_loops) and the
    sourceless cells (nulls).
    """

    mop: ManyToOnePoset
    omega: str
    iterated_targets: tuple[str, ...]
    lam_k: dict[int, frozenset[str]]
    omega_k: dict[int, frozenset[str]]
    null_k: dict[int, frozenset[str]]
    degenerate: bool = False

    @property
    def dimension(self) -> int:
        return self.mop.dimension

    @property
    def bottom(self) -> str:
        return self.mop.bottom

    def grade(self, k: int) -> tuple[str, ...]:
        return self.mop.grade(k)

    def sign(self, y: str, x: str) -> str | None:
        return self.mop.sign(y, x)


def _down_reach(mop: ManyToOnePoset, start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        if mop.dim[x] < 0:
            continue
        for y in mop.facets(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def thinness_completions(mop: ManyToOnePoset, z: str, y: str, x: str) -> list[tuple[str, str, str]]:
    """Non-loop-signed completions (y', alpha', beta') of the chain z < y < x."""
    out = []
    for y2 in mop.facets(x):
        if y2 == y:
            continue
        beta2 = mop.sign(z, y2)
        alpha2 = mop.sign(y2, x)
        if beta2 in (MINUS, PLUS) and alpha2 in (MINUS, PLUS):
            out.append((y2, alpha2, beta2))
    return out


def _thinness_diagnostics(mop: ManyToOnePoset) -> list[Diagnostic]:
    out = []
    for x in sorted(mop.cells):
        if mop.dim[x] < 1:
            continue
        for y in mop.facets(x):
            alpha = mop.sign(y, x)
            for z in mop.facets(y):
                beta = mop.sign(z, y)
                if alpha != LOOP and beta != LOOP:
                    comps = thinness_completions(mop, z, y, x)
                    if not comps:
                        out.append(make("ThinnessMissingCompletion", [z, y, x], "oriented thinness", f"chain {z!r} <{beta} {y!r} <{alpha} {x!r} has no completion"))
                    elif len(comps) > 1:
                        out.append(make("ThinnessNonUnique", [z, y, x] + [c[0] for c in comps], "oriented thinness", f"chain {z!r} <{beta} {y!r} <{alpha} {x!r} has {len(comps)} completions"))
                    else:
                        y2, alpha2, beta2 = comps[0]
                        if sign_product(alpha, beta) != sign_negate(sign_product(alpha2, beta2)):
                            out.append(make("SignRuleViolated", [z, y, x, y2], "sign rule", f"lozenge over {z!r} < {y!r},{y2!r} < {x!r} breaks the sign rule"))
                elif beta == LOOP and alpha == MINUS:
                    found = any(
                        not (mop.sign(y2, x) == MINUS and mop.sign(z, y2) == LOOP)
                        for y2 in mop.facets(x)
                        if y2 != y and mop.sign(z, y2) is not None
                    )
                    if not found:
                        out.append(make("LoopChainMissingCompletion", [z, y, x], "oriented thinness (loop chains)", f"chain {z!r} <o {y!r} <- {x!r} has no admissible completion"))
    return out


def _acyclicity_diagnostics(mop: ManyToOnePoset) -> list[Diagnostic]:
    out = []
    for x in sorted(mop.cells):
        if mop.dim[x] < 1:
            continue
        fac = mop.facets(x)
        succ = {b: [] for b in fac}
        for b in fac:
            if mop.dim[b] < 0 or not mop.gamma[b]:
                continue
            t = mop.gamma_cell(b)
            for a in fac:
                if a != b and t in mop.delta_minus(a):
                    succ[b].append(a)
        cycle = _find_cycle(fac, succ)
        if cycle:
            out.append(make("AcyclicityCycle", [x, *cycle], "acyclicity", f"facet flow of {x!r} has a directed cycle"))
    return out


def _find_cycle(vertices, succ) -> list[str] | None:
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in vertices}
    stack_path: list[str] = []

    def visit(v):
        color[v] = GREY
        stack_path.append(v)
        for w in succ[v]:
            if color[w] == GREY:
                return stack_path[stack_path.index(w):] + [w]
            if color[w] == WHITE:
                r = visit(w)
                if r:
                    return r
        stack_path.pop()
        color[v] = BLACK
        return None

    for v in vertices:
        if color[v] == WHITE:
            r = visit(v)
            if r:
                return r
    return None


def dfc_diagnostics(mop: ManyToOnePoset, allow_point: bool = False) -> list[Diagnostic]:
    """Every DFC axiom violation; assumes mop already passed mop_diagnostics."""
    out: list[Diagnostic] = []
    n = mop.dimension

    maximal = [c for c in sorted(mop.cells) if not mop.cofaces(c)]
    degenerate_point = n == 0 and len(mop.cells) == 2
    if len(maximal) != 1:
        out.append(make("NoGreatestElement", maximal, "greatest element", f"{len(maximal)} maximal cells"))
    else:
        omega = maximal[0]
        if mop.dim[omega] < 1 and not (allow_point and degenerate_point):
            out.append(make("NoGreatestElement", [omega], "greatest element", "greatest element is not of positive dimension"))
        missing = sorted(set(mop.cells) - _down_reach(mop, omega))
        if missing:
            out.append(make("NoGreatestElement", missing, "greatest element", "cells not below the maximal cell"))

    for y in sorted(mop.loop_cells()):
        if not mop.plus_cofaces(y):
            out.append(make("LoopWithoutPlusCoface", [y], "loops", f"loop {y!r} has no cell with {y!r} as proper target"))

    out.extend(_thinness_diagnostics(mop))
    out.extend(_acyclicity_diagnostics(mop))
    out.extend(_local_order_diagnostics(mop))
    return sorted(set(out), key=sort_key)


def dfc_validate(mop: ManyToOnePoset, allow_point: bool = False) -> Dfc:
    diags = dfc_diagnostics(mop, allow_point=allow_point)
    if diags:
        raise ValidationError(diags)
    n = mop.dimension
    omega = [c for c in mop.cells if not mop.cofaces(c)][0]
    targets = [omega]
    for _ in range(n):
        targets.append(mop.gamma_cell(targets[-1]))
    targets.reverse()  # index j = the j-dimensional iterated target
    lam = mop.lam()
    loops = mop.loop_cells()
    nulls = mop.sourceless()
    lam_k = {k: frozenset(c for c in mop.grade(k) if c in lam) for k in range(n + 1)}
    omega_k = {k: frozenset(c for c in mop.grade(k) if c in loops) for k in range(n + 1)}
    null_k = {k: frozenset(c for c in mop.grade(k) if c in nulls) for k in range(n + 1)}
    return Dfc(mop, omega, tuple(targets), lam_k, omega_k, null_k, degenerate=n == 0)


def iterated_target(dfc: Dfc, j: int) -> str:
    """The unique j-dimensional cell reached from omega by iterating gamma."""
    return dfc.iterated_targets[j]


def strata(dfc: Dfc) -> tuple[dict[int, frozenset[str]], dict[int, frozenset[str]], dict[int, frozenset[str]]]:
    return dfc.lam_k, dfc.omega_k, dfc.null_k


# -- path orders -------------------------------------------------------


@dataclass(frozen=True)
class PathOrder:
    """Transitive closure of a one-step path relation on a grade, plus strictness."""

    pairs: frozenset[tuple[str, str]]
    strict: bool
    cycle: tuple[str, ...] | None


def path_order(dfc, k: int, sign: str) -> PathOrder:
    """Closure of the lower (minus) or upper (plus) one-step order on the k-cells."""
    mop = dfc.mop if isinstance(dfc, Dfc) else dfc
    grade = mop.grade(k)
    succ = {x: set() for x in grade}
    if sign == MINUS:
        # for k = 0 the targets are the bottom cell, which is nobody's
        # source, so the relation comes out empty as required
        for x in grade:
            t = mop.gamma_cell(x)
            for x2 in mop.minus_cofaces(t):
                if mop.dim[x2] == k:
                    succ[x].add(x2)
    elif sign == PLUS:
        for w in mop.grade(k + 1):
            for x in sorted(mop.delta_minus(w)):
                for x2 in sorted(mop.gamma_plus(w)):
                    succ[x].add(x2)
    else:
        raise ValueError(f"path_order sign must be {MINUS!r} or {PLUS!r}")

    closure: set[tuple[str, str]] = set()
    for x in grade:
        seen: set[str] = set()
        stack = sorted(succ[x])
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(sorted(succ[v]))
        closure.update((x, v) for v in seen)
    strict = all((x, x) not in closure for x in grade)
    cycle = None
    if not strict:
        cycle = tuple(_find_cycle(list(grade), {v: sorted(succ[v]) for v in grade}) or ())
    return PathOrder(frozenset(closure), strict, cycle)


# -- source trees ------------------------------------------------------


def delta_tree(dfc: Dfc, a: str) -> RootedTree:
    """The tree of non-loop sources of a, rooted at the second target."""
    mop = dfc.mop
    if mop.dim[a] < 1:
        raise ValueError(f"delta_tree needs a cell of dimension >= 1, got {a!r}")
    loops = mop.loop_cells()
    nodes = sorted(mop.delta[a] - loops)
    root = mop.gamma_cell(mop.gamma_cell(a))
    edges = sorted({root} | {z for b in nodes for z in mop.facets(b)})
    node_target = {b: mop.gamma_cell(b) for b in nodes}
    edge_target = {}
    for z in edges:
        owners = [b for b in nodes if z in mop.delta_minus(b)]
        if len(owners) > 1:
            raise ValidationError([make("TreeInvalid", [a, z, *owners], "source tree", f"edge {z!r} has several target nodes in the source tree of {a!r}")])
        if owners:
            edge_target[z] = owners[0]
    diags = tree_diagnostics(nodes, edges, node_target, edge_target, root)
    if diags:
        raise ValidationError([make("TreeInvalid", [a], "source tree", f"source tree of {a!r} is not a rooted tree")] + diags)
    return RootedTree(nodes, edges, node_target, edge_target, root)
