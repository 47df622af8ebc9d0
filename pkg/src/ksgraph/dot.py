"""Graphviz DOT rendering of orthogonality graphs.

Nodes are named ``n<id>``; each context becomes ``subgraph cluster_ctx<k>``
(the ``cluster`` prefix is what makes Graphviz draw a box) in canonical
context order. With an intensive valuation, the node label is the exact value
and the fill is gray with lightness ``1 - value``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ksgraph.frames import Context, Frame, OrthogonalityGraph, build_graph, enumerate_maximal_contexts, resolve_bases
from ksgraph.scalar import format_rational
from ksgraph.valuations import IntensiveValuation

__all__ = ["export_dot", "gray_fill"]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def gray_fill(value: Fraction) -> str:
    level = round((1 - Fraction(value)) * 255)
    return f"#{level:02x}{level:02x}{level:02x}"


def export_dot(
    target: Frame | OrthogonalityGraph,
    contexts: Sequence[Context] | None = None,
    giv: IntensiveValuation | None = None,
    *,
    name: str = "frame",
) -> str:
    if isinstance(target, Frame):
        graph = build_graph(target)
        if contexts is None:
            contexts = resolve_bases(target, graph)
    else:
        graph = target
        if contexts is None:
            contexts = resolve_bases(graph.frame, graph) if graph.frame is not None else enumerate_maximal_contexts(graph)
    contexts = sorted(contexts)

    lines = [f"graph {_quote(name)} {{", "  node [shape=circle];"]
    for u in graph.nodes:
        attrs = []
        if giv is None:
            attrs.append(f"label={_quote(graph.label(u))}")
        else:
            val = giv[u]
            attrs.append(f"label={_quote(format_rational(val))}")
            attrs.append(f"xlabel={_quote(graph.label(u))}")
            attrs.append("style=filled")
            attrs.append(f"fillcolor={_quote(gray_fill(val))}")
            if val > Fraction(1, 2):
                attrs.append('fontcolor="white"')
        lines.append(f"  n{u} [{', '.join(attrs)}];")
    for u, v in graph.edges():
        lines.append(f"  n{u} -- n{v};")
    for k, c in enumerate(contexts):
        lines.append(f"  subgraph cluster_ctx{k} {{")
        lines.append(f"    label={_quote(f'ctx{k}')};")
        lines.append("    " + " ".join(f"n{u};" for u in c.members))
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
