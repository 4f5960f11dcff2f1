"""Graphviz export of a resolution graph with its arrows."""

from __future__ import annotations

from .graph import ResolutionGraph


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: ResolutionGraph, name: str = "resolution") -> str:
    """Vertices are labeled ``id (self_int, genus)``.

    f-arrows point into their vertex, g-arrows point out of it, and polar
    arrows point out in red dashes; each arrow carries its weight as label.
    """
    lines = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    for v in graph.vertices:
        lines.append(f"  {_q(v.id)} [label={_q(f'{v.id} ({v.self_int}, {v.genus})')}];")
    for e in graph.edges:
        lines.append(f"  {_q(e.u)} -> {_q(e.v)} [dir=none];")
    for k, a in enumerate(graph.arrows):
        end = _q(f"{a.kind}#{k}")
        lines.append(f"  {end} [shape=point, label=\"\"];")
        if a.kind == "f":
            lines.append(f"  {end} -> {_q(a.vertex)} [label=\"{a.weight}\"];")
        elif a.kind == "g":
            lines.append(f"  {_q(a.vertex)} -> {end} [label=\"{a.weight}\"];")
        else:
            lines.append(f"  {_q(a.vertex)} -> {end} [label=\"{a.weight}\", color=red, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
