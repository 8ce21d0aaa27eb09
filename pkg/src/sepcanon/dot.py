"""Graphviz DOT export of curves and separation trees."""

from __future__ import annotations

from .curve_graph import CurveGraph
from .separators import SeparationTree, structure

_PALETTE = ("blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def curve_dot(g: CurveGraph, name: str = "curve") -> str:
    """Multigraph with genus labels; seps bold, each maximal bisep class in its own colour."""
    s = structure(g) if g.is_connected() else None
    sep_edges = {st.edges[0] for st in s.seps} if s else set()
    colour = {}
    if s:
        for i, p in enumerate(s.polyseparators):
            for e in p.edges:
                colour[e] = _PALETTE[i % len(_PALETTE)]
    lines = [f"graph {_q(name)} {{"]
    for v in g.vertices:
        lines.append(f"  {_q(v.id)} [label={_q(f'{v.id}:g{v.genus}')}];")
    for e in g.edges:
        attrs = [f"label={_q(e.id)}"]
        if e.id in sep_edges:
            attrs.append("style=bold")
            attrs.append("penwidth=3")
        if e.id in colour:
            attrs.append(f"color={colour[e.id]}")
        lines.append(f"  {_q(e.ends[0])} -- {_q(e.ends[1])} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_dot(t: SeparationTree, name: str = "separation_tree") -> str:
    lines = [f"graph {_q(name)} {{"]
    for v in t.vertices:
        lines.append(f"  {_q(v)};")
    for e in t.edges:
        style = "bold" if e.kind.value == "sep" else "dashed"
        lines.append(f"  {_q(e.ends[0])} -- {_q(e.ends[1])} [label={_q(e.id)}, style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
