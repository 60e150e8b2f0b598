"""Backend selection and the exact acyclic-partition solver built on it.

The compiled ``_kernels`` extension is used when it imports and the instance
fits in 64 vertices; ``COVERDIM_PURE=1`` forces the Python fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("COVERDIM_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _impl(size: int, backend: str | None):
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    if _compiled is not None and size <= 64:
        return _compiled
    return _kernels_py


def closes_cycle(v, out, inn, members, backend=None):
    return _impl(len(out), backend).closes_cycle(v, out, inn, members)


def acyclic_color(out, inn, order, k, backend=None):
    return _impl(len(out), backend).acyclic_color(out, inn, order, k)


def greedy_color(out, inn, order, backend=None):
    return _impl(len(out), backend).greedy_color(out, inn, order)


def search_order(out: list[int], inn: list[int]) -> list[int]:
    """Vertex order that closes cycles early: grow greedily by connections to the prefix."""
    n = len(out)
    if n == 0:
        return []
    nbr = [out[v] | inn[v] for v in range(n)]
    mutual = [out[v] & inn[v] for v in range(n)]
    degree = [nbr[v].bit_count() + mutual[v].bit_count() for v in range(n)]
    chosen = 0
    order = []
    remaining = set(range(n))
    while remaining:
        best = max(
            remaining,
            key=lambda v: ((mutual[v] & chosen).bit_count(), (nbr[v] & chosen).bit_count(), degree[v], -v),
        )
        order.append(best)
        remaining.discard(best)
        chosen |= 1 << best
    return order


def _colour_classes(cand: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colouring of ``cand``; returns vertices with running colour bounds."""
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    left = cand
    while left:
        colour += 1
        avail = left
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v] & ~low
            left &= ~low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: list[int]) -> list[int]:
    """Maximum clique of an undirected graph given as adjacency masks.

    Branch and bound with greedy-colouring bounds; deterministic for a given
    input.  The clique is returned sorted.
    """
    best: list[int] = []

    def expand(clique: list[int], cand: int):
        nonlocal best
        order, bounds = _colour_classes(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= len(best):
                return
            v = order[i]
            clique.append(v)
            nxt = cand & adj[v]
            if nxt:
                expand(clique, nxt)
            elif len(clique) > len(best):
                best = clique[:]
            clique.pop()
            cand &= ~(1 << v)

    if adj:
        expand([], (1 << len(adj)) - 1)
    return sorted(best)


def mutual_clique(out: list[int], inn: list[int]) -> list[int]:
    """Largest set of vertices pairwise joined by 2-cycles (each needs its own class)."""
    return max_clique([out[v] & inn[v] for v in range(len(out))])


def dichromatic(out: list[int], inn: list[int], backend=None) -> tuple[int, list[int]]:
    """Minimum number of acyclic classes and a partition attaining it.

    Iterative deepening from the 2-cycle clique bound up to the greedy bound.
    Classes in the returned colouring are numbered from 0.
    """
    n = len(out)
    if n == 0:
        return 0, []
    order = search_order(out, inn)
    greedy = greedy_color(out, inn, order, backend)
    upper = max(greedy) + 1
    lower = max(1, len(mutual_clique(out, inn)))
    for k in range(lower, upper):
        found = acyclic_color(out, inn, order, k, backend)
        if found is not None:
            return k, found
    return upper, greedy
