"""Deterministic DOT export: Hasse diagrams for complexes, root-down trees.

Facet relations are labelled -, + or o following the Hasse conventions;
whitedots render hollow, blackdots solid, dangling root and leaf ends as
points.
"""

from __future__ import annotations

from .poset import ManyToOnePoset
from .trees import Opetope, RootedTree, SubdividedTree


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(obj, style: str = "auto") -> str:
    if isinstance(obj, ManyToOnePoset):
        return _dot_hasse(obj)
    if isinstance(obj, RootedTree):
        return _dot_trees([("", SubdividedTree(obj, {}))])
    if isinstance(obj, SubdividedTree):
        return _dot_trees([("", obj)])
    if isinstance(obj, Opetope):
        pairs = []
        for i, t in enumerate(obj.trees):
            pairs.append((f"T{i}", SubdividedTree(t, obj.subdivision(i))))
        return _dot_trees(pairs)
    if hasattr(obj, "mop"):
        return _dot_hasse(obj.mop)
    raise TypeError(f"cannot export {type(obj).__name__} to DOT")


def _dot_hasse(mop: ManyToOnePoset) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;", '  node [shape=ellipse];']
    for k in range(-1, mop.dimension + 1):
        grade = mop.grade(k)
        if not grade:
            continue
        members = " ".join(_quote(c) + ";" for c in grade)
        lines.append(f"  {{ rank=same; {members} }}")
    for x in sorted(mop.cells):
        for y in mop.facets(x):
            lines.append(f"  {_quote(y)} -> {_quote(x)} [label={_quote(mop.sign(y, x))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_trees(pairs) -> str:
    lines = ["digraph trees {", "  rankdir=BT;"]
    for prefix, st in pairs:
        t = st.base
        pre = (prefix + "/") if prefix else ""
        if prefix:
            lines.append(f"  subgraph {_quote('cluster_' + prefix)} {{")
            lines.append(f"    label={_quote(prefix)};")
        indent = "    " if prefix else "  "
        for a in sorted(t.nodes):
            lines.append(f"{indent}{_quote(pre + a)} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label={_quote(a)}];")
        ends: list[str] = []

        def port(edge: str, kind: str) -> str:
            name = f"{pre}{kind}:{edge}"
            ends.append(f"{indent}{_quote(name)} [shape=point, label=\"\"];")
            return name

        for b in sorted(t.edges):
            lower = t.edge_target.get(b)
            upper = t.source_node_of(b)
            tail = pre + lower if lower is not None else port(b, "root")
            stops = [tail]
            for w in st.w.get(b, ()):
                lines.append(f"{indent}{_quote(pre + w)} [shape=circle, style=solid, label={_quote(w)}];")
                stops.append(pre + w)
            stops.append(pre + upper if upper is not None else port(b, "leaf"))
            for lo, hi in zip(stops, stops[1:]):
                lines.append(f"{indent}{_quote(lo)} -> {_quote(hi)} [label={_quote(b)}, arrowhead=none];")
        lines.extend(ends)
        if prefix:
            lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
