"""DOT rendering for posets, unfoldings and certificates."""

from __future__ import annotations

from .minor import SubdivisionCertificate, UGraph, subdivision_dot
from .poset import Poset
from .unfolding import Unfolding


def _name(p: Poset, v: int) -> str:
    return str(p.label(v))


def poset_dot(p: Poset, name: str = "P") -> str:
    """Hasse diagram: cover arcs pointing upward."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for v in range(p.n):
        lines.append(f'  {v} [label="{_name(p, v)}"];')
    for u, v in p.cover_arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def unfolding_dot(p: Poset, u: Unfolding) -> str:
    """Cover diagram with one cluster per unfolding layer."""
    lines = ["digraph Unfolding {", "  rankdir=BT;", "  node [shape=circle];"]
    placed = set()
    for i in range(u.m):
        for tag, layer in ((f"A{i}", u.A(i)), (f"B{i + 1}", u.B(i + 1))):
            lines.append(f'  subgraph cluster_{tag} {{ label="{tag}"; style=dashed;')
            for v in sorted(layer):
                style = ", shape=doublecircle" if v == u.root else ""
                lines.append(f'    {v} [label="{_name(p, v)}"{style}];')
                placed.add(v)
            lines.append("  }")
    for v in range(p.n):
        if v not in placed:
            lines.append(f'  {v} [label="{_name(p, v)}", color=gray];')
    for a, b in p.cover_arcs():
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_dot(p: Poset, cert: SubdivisionCertificate | None) -> str:
    g = UGraph(p.n, p.cover_arcs())
    return subdivision_dot(g, cert, [_name(p, v) for v in range(p.n)])
