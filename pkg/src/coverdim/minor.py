"""Clique subdivisions: certificate checking and a brute-force oracle for small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .bits import iter_bits
from .errors import TooLarge

ORACLE_LIMIT = 12


class UGraph:
    """Simple undirected graph on ``0..n-1`` stored as adjacency masks."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"UGraph(n={self.n}, m={len(self.edges())})"


def complete_graph(n: int) -> UGraph:
    return UGraph(n, combinations(range(n), 2))


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class SubdivisionCertificate:
    principals: list[int]
    paths: dict[tuple[int, int], list[int]]

    def path(self, u: int, v: int) -> list[int] | None:
        if (u, v) in self.paths:
            return self.paths[(u, v)]
        if (v, u) in self.paths:
            return self.paths[(v, u)][::-1]
        return None

    def vertices(self) -> set[int]:
        return set(self.principals).union(*map(set, self.paths.values()))

    def to_dict(self) -> dict:
        return {
            "principals": list(self.principals),
            "paths": [{"ends": list(k), "path": list(p)} for k, p in self.paths.items()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubdivisionCertificate":
        paths = {tuple(e["ends"]): list(e["path"]) for e in data["paths"]}
        return cls(list(data["principals"]), paths)


def verify_subdivision(g: UGraph, cert: SubdivisionCertificate, n: int) -> tuple[bool, str | None]:
    """Check that ``cert`` is a subdivision of ``K_n`` in ``g``; returns ``(ok, first failed clause)``."""
    prin = list(cert.principals)
    if len(prin) != n:
        return False, "principal count"
    if len(set(prin)) != n:
        return False, "distinct principals"
    if any(not 0 <= v < g.n for v in cert.vertices()):
        return False, "vertex range"
    keys = {frozenset(k) for k in cert.paths}
    if len(cert.paths) != n * (n - 1) // 2 or len(keys) != len(cert.paths):
        return False, "path count"
    pset = set(prin)
    interiors: set[int] = set()
    for u, v in combinations(prin, 2):
        path = cert.path(u, v)
        if path is None:
            return False, "path count"
        if len(path) < 2 or path[0] != u or path[-1] != v:
            return False, "endpoints"
        if len(set(path)) != len(path):
            return False, "simple path"
        if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
            return False, "adjacency"
        inner = path[1:-1]
        if pset.intersection(inner):
            return False, "interiors avoid principals"
        if interiors.intersection(inner):
            return False, "internally disjoint"
        interiors.update(inner)
    return True, None


def prune_low_degree(g: UGraph, min_degree: int = 2) -> int:
    """Mask of vertices left after repeatedly deleting those of degree below ``min_degree``."""
    alive = (1 << g.n) - 1
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (g.adj[v] & alive).bit_count() < min_degree:
                alive &= ~(1 << v)
                changed = True
    return alive


def _paths(g: UGraph, src: int, dst: int, allowed: int) -> Iterator[list[int]]:
    """Simple ``src``-``dst`` paths with interiors in ``allowed``, shortest first."""
    limit = allowed.bit_count() + 1
    for length in range(1, limit + 1):
        stack = [(src, [src], 0)]
        while stack:
            u, path, used = stack.pop()
            steps = len(path) - 1
            if steps == length - 1:
                if g.has_edge(u, dst):
                    yield path + [dst]
                continue
            for w in sorted(iter_bits(g.adj[u] & allowed & ~used), reverse=True):
                stack.append((w, path + [w], used | 1 << w))


def find_clique_subdivision(g: UGraph, n: int, limit: int = ORACLE_LIMIT) -> SubdivisionCertificate | None:
    """Exhaustive search for a ``K_n`` subdivision.

    Vertices that cannot lie on any subdivision (degree below 2 after
    iterated deletion) are removed first; ``TooLarge`` is raised if more
    than ``limit`` vertices remain.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return SubdivisionCertificate([0], {}) if g.n else None
    if n == 2:
        edges = g.edges()
        return SubdivisionCertificate(list(edges[0]), {edges[0]: list(edges[0])}) if edges else None

    alive = prune_low_degree(g, 2)
    size = alive.bit_count()
    if size > limit:
        raise TooLarge(f"{size} vertices remain after pruning; oracle limit is {limit}")
    cands = [v for v in iter_bits(alive) if (g.adj[v] & alive).bit_count() >= n - 1]
    for prin in combinations(cands, n):
        pmask = sum(1 << v for v in prin)
        pairs = list(combinations(prin, 2))
        found = _route(g, pairs, 0, alive & ~pmask, {})
        if found is not None:
            return SubdivisionCertificate(list(prin), found)
    return None


def _route(g: UGraph, pairs, i: int, free: int, acc: dict):
    if i == len(pairs):
        return dict(acc)
    u, v = pairs[i]
    for path in _paths(g, u, v, free):
        used = 0
        for w in path[1:-1]:
            used |= 1 << w
        acc[(u, v)] = path
        res = _route(g, pairs, i + 1, free & ~used, acc)
        if res is not None:
            return res
        del acc[(u, v)]
    return None


def subdivision_dot(g: UGraph, cert: SubdivisionCertificate | None = None, labels: Sequence | None = None) -> str:
    """DOT rendering with principals boxed and path edges bold."""
    prin = set(cert.principals) if cert else set()
    inner: set[int] = set()
    bold: set[tuple[int, int]] = set()
    if cert:
        for path in cert.paths.values():
            inner.update(path[1:-1])
            bold.update(_key(a, b) for a, b in zip(path, path[1:]))
    lines = ["graph G {"]
    for v in range(g.n):
        name = labels[v] if labels else v
        style = ""
        if v in prin:
            style = ', shape=box, style=filled, fillcolor="#f4c542"'
        elif v in inner:
            style = ', style=filled, fillcolor="#cde"'
        lines.append(f'  {v} [label="{name}"{style}];')
    for u, v in g.edges():
        attr = " [penwidth=3]" if (u, v) in bold else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
