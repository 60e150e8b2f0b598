"""Pure-Python versions of the search kernels.

These mirror ``_kernels.pyx`` step for step so both backends return the same
certificates; the compiled module is preferred when it is importable.
"""

from __future__ import annotations


def closes_cycle(v: int, out: list[int], inn: list[int], members: int) -> bool:
    """Would adding ``v`` to the vertex class ``members`` create a directed cycle?"""
    reach = out[v] & members
    if reach & inn[v]:
        return True
    frontier = reach
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        u = low.bit_length() - 1
        new = out[u] & members & ~reach
        if new:
            if new & inn[v]:
                return True
            reach |= new
            frontier |= new
    return False


def acyclic_color(out: list[int], inn: list[int], order: list[int], k: int) -> list[int] | None:
    """Partition the vertices into at most ``k`` classes inducing acyclic subgraphs.

    Vertices are assigned in ``order``; a vertex may open class ``c`` only if
    classes ``0..c-1`` are already in use.  Returns the class of every vertex
    or ``None`` when no such partition exists.
    """
    n = len(order)
    color = [-1] * len(out)
    if n == 0:
        return color
    if k <= 0:
        return None
    classes = [0] * k

    def search(t: int, used: int) -> bool:
        if t == n:
            return True
        v = order[t]
        top = used + 1 if used < k else k
        for c in range(top):
            m = classes[c]
            if closes_cycle(v, out, inn, m):
                continue
            classes[c] = m | 1 << v
            color[v] = c
            if search(t + 1, used + 1 if c == used else used):
                return True
            classes[c] = m
        color[v] = -1
        return False

    return color if search(0, 0) else None


def greedy_color(out: list[int], inn: list[int], order: list[int]) -> list[int]:
    color = [-1] * len(out)
    classes: list[int] = []
    for v in order:
        for c, m in enumerate(classes):
            if not closes_cycle(v, out, inn, m):
                classes[c] = m | 1 << v
                color[v] = c
                break
        else:
            classes.append(1 << v)
            color[v] = len(classes) - 1
    return color
