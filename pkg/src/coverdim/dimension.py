"""Incomparable pairs, alternating cycles, and exact dimension-type invariants.

A set of incomparable pairs is reversible exactly when it induces an acyclic
subgraph of the pair digraph, where pair ``i`` points to pair ``j`` whenever
``x_i <= y_j``.  Every minimisation here (``dim``, ``dim*``, ``chi``) is the
same acyclic-partition problem over a different pair set.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from .bits import iter_bits, mask_of
from .errors import PairNotIncomparable
from .poset import Poset


class IncPair(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class IncPairDigraph:
    vertices: tuple[IncPair, ...]
    out: tuple[int, ...]
    inn: tuple[int, ...]

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, m in enumerate(self.out) for j in iter_bits(m)]

    def __len__(self) -> int:
        return len(self.vertices)


def inc_pairs(p: Poset) -> list[IncPair]:
    return [IncPair(x, y) for x in range(p.n) for y in iter_bits(p.incomparable_masks[x])]


def inc_minmax_pairs(p: Poset) -> list[IncPair]:
    maxima = p.maximals_mask
    return [
        IncPair(x, y)
        for x in iter_bits(p.minimals_mask)
        for y in iter_bits(p.incomparable_masks[x] & maxima)
    ]


def inc_between(p: Poset, a: Iterable[int], b: Iterable[int]) -> list[IncPair]:
    """``Inc(A, B)``: incomparable pairs with first point in ``a`` and second in ``b``."""
    bmask = mask_of(b)
    return [IncPair(x, y) for x in sorted(set(a)) for y in iter_bits(p.incomparable_masks[x] & bmask)]


def critical_pairs(p: Poset) -> list[IncPair]:
    """Incomparable ``(x, y)`` with everything below ``x`` below ``y`` and everything above ``y`` above ``x``."""
    out = []
    for x, y in inc_pairs(p):
        if p.down[x] & ~p.down[y] == 0 and p.up[y] & ~p.up[x] == 0:
            out.append(IncPair(x, y))
    return out


def pair_digraph(p: Poset, pairs: Sequence[IncPair]) -> IncPairDigraph:
    pairs = tuple(IncPair(*q) for q in pairs)
    n = len(pairs)
    # below_y[z]: pairs j with z <= y_j
    by_y: dict[int, int] = {}
    for j, (_, y) in enumerate(pairs):
        by_y[y] = by_y.get(y, 0) | 1 << j
    out = []
    for i, (x, _) in enumerate(pairs):
        m = 0
        for y, js in by_y.items():
            if p.leq(x, y):
                m |= js
        out.append(m & ~(1 << i))
    inn = [0] * n
    for i, m in enumerate(out):
        for j in iter_bits(m):
            inn[j] |= 1 << i
    return IncPairDigraph(pairs, tuple(out), tuple(inn))


def _check_pairs(p: Poset, pairs: Iterable[IncPair]) -> list[IncPair]:
    pairs = [IncPair(*q) for q in pairs]
    for x, y in pairs:
        if not (0 <= x < p.n and 0 <= y < p.n) or p.comparable(x, y):
            raise PairNotIncomparable(f"({x}, {y}) is not an incomparable pair")
    return pairs


def shortest_cycle(g: IncPairDigraph, members: int | None = None) -> list[int] | None:
    """Shortest directed cycle inside ``members`` (vertex indices in cycle order)."""
    if members is None:
        members = (1 << len(g)) - 1
    best = None
    for s in iter_bits(members):
        prev = {s: -1}
        queue = deque([s])
        found = None
        while queue and found is None:
            u = queue.popleft()
            for v in iter_bits(g.out[u] & members):
                if v == s:
                    found = u
                    break
                if v not in prev:
                    prev[v] = u
                    queue.append(v)
        if found is None:
            continue
        cyc = []
        u = found
        while u != -1:
            cyc.append(u)
            u = prev[u]
        cyc.reverse()
        if best is None or len(cyc) < len(best):
            best = cyc
            if len(best) == 2:
                break
    return best


def linear_extension_reversing(p: Poset, pairs: Iterable[IncPair]) -> list[int] | None:
    """Lowest-index-first linear extension with ``y`` before ``x`` for each pair, if any."""
    succ = [set(iter_bits(p.covers_up[u])) for u in range(p.n)]
    for x, y in pairs:
        succ[y].add(x)
    indeg = [0] * p.n
    for u in range(p.n):
        for v in succ[u]:
            indeg[v] += 1
    heap = [u for u in range(p.n) if indeg[u] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return order if len(order) == p.n else None


def is_linear_extension(p: Poset, order: Sequence[int]) -> bool:
    if sorted(order) != list(range(p.n)):
        return False
    pos = {u: i for i, u in enumerate(order)}
    return all(pos[u] < pos[v] for u, v in p.cover_arcs())


def is_reversible(p: Poset, pairs: Iterable[IncPair]) -> tuple[bool, list[IncPair] | list[int]]:
    """Decide reversibility; the witness is an alternating cycle or a reversing extension."""
    pairs = _check_pairs(p, pairs)
    unique = list(dict.fromkeys(pairs))
    g = pair_digraph(p, unique)
    cyc = shortest_cycle(g)
    if cyc is not None:
        return False, [unique[i] for i in cyc]
    ext = linear_extension_reversing(p, unique)
    if ext is None:  # pragma: no cover - acyclicity guarantees an extension
        raise AssertionError("acyclic pair set without a reversing extension")
    return True, ext


def is_alternating_cycle(p: Poset, cycle: Sequence[IncPair]) -> bool:
    r = len(cycle)
    if r < 2:
        return False
    return all(p.leq(cycle[i][0], cycle[(i + 1) % r][1]) for i in range(r)) and all(
        p.incomparable(x, y) for x, y in cycle
    )


@dataclass
class DimCertificate:
    classes: list[list[IncPair]]
    extensions: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "classes": [[[x, y] for x, y in cls] for cls in self.classes],
            "extensions": [list(e) for e in self.extensions],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DimCertificate":
        return cls(
            [[IncPair(x, y) for x, y in c] for c in data["classes"]],
            [list(e) for e in data.get("extensions", [])],
        )

    def verify(self, p: Poset, pairs: Iterable[IncPair] | None = None) -> bool:
        """Check the classes partition ``pairs`` and each extension reverses its class."""
        seen = [q for c in self.classes for q in c]
        if len(seen) != len(set(seen)):
            return False
        if pairs is not None and set(seen) != set(IncPair(*q) for q in pairs):
            return False
        if len(self.extensions) != len(self.classes):
            return False
        for cls, ext in zip(self.classes, self.extensions):
            if not is_linear_extension(p, ext):
                return False
            pos = {u: i for i, u in enumerate(ext)}
            if any(pos[y] > pos[x] for x, y in cls):
                return False
            if cls and not is_reversible(p, cls)[0]:
                return False
        return True


def min_reversible_partition(p: Poset, pairs: Sequence[IncPair], backend=None) -> tuple[int, list[list[IncPair]]]:
    """Minimum number of reversible classes covering ``pairs`` (0 for no pairs)."""
    pairs = list(pairs)
    if not pairs:
        return 0, []
    g = pair_digraph(p, pairs)
    k, colour = kernels.dichromatic(list(g.out), list(g.inn), backend)
    classes: list[list[IncPair]] = [[] for _ in range(k)]
    for i, c in enumerate(colour):
        classes[c].append(pairs[i])
    return k, classes


def _certificate(p: Poset, classes: list[list[IncPair]]) -> DimCertificate:
    exts = []
    for cls in classes:
        ext = linear_extension_reversing(p, cls)
        if ext is None:  # pragma: no cover
            raise AssertionError("solver returned a non-reversible class")
        exts.append(ext)
    return DimCertificate(classes, exts)


def dim_exact(p: Poset, *, use_critical: bool = True, backend=None) -> tuple[int, DimCertificate]:
    """Exact dimension with a certificate partitioning all of ``Inc(p)``.

    With ``use_critical`` the search runs over critical pairs only; every other
    incomparable pair is then placed in the first class whose extension already
    reverses it.  A family of extensions reversing all critical pairs is a
    realizer, so both routes give the same minimum.
    """
    allpairs = inc_pairs(p)
    if not allpairs:
        return 1, DimCertificate([[]], [list(p.topological_order)])
    search = critical_pairs(p) if use_critical else allpairs
    d, classes = min_reversible_partition(p, search, backend)
    cert = _certificate(p, classes)
    if use_critical:
        placed = set(search)
        positions = [{u: i for i, u in enumerate(e)} for e in cert.extensions]
        for q in allpairs:
            if q in placed:
                continue
            for c, pos in enumerate(positions):
                if pos[q.y] < pos[q.x]:
                    cert.classes[c].append(q)
                    break
            else:  # pragma: no cover - impossible for a realizer
                raise AssertionError(f"pair {q} reversed by no extension")
        for cls in cert.classes:
            cls.sort()
    return d, cert


def dim_star_exact(p: Poset, backend=None) -> tuple[int, DimCertificate]:
    pairs = inc_minmax_pairs(p)
    if not pairs:
        return 1, DimCertificate([[]], [list(p.topological_order)])
    d, classes = min_reversible_partition(p, pairs, backend)
    return d, _certificate(p, classes)


def chi(p: Poset, a: Iterable[int], b: Iterable[int], backend=None) -> int:
    """Minimum number of reversible classes partitioning ``Inc(a, b)``; 0 if it is empty."""
    return min_reversible_partition(p, inc_between(p, a, b), backend)[0]


def chi_coloring(p: Poset, a: Iterable[int], b: Iterable[int], backend=None) -> tuple[int, dict[IncPair, int]]:
    """Like :func:`chi` but also returns an optimal colouring with colours ``1..chi``."""
    pairs = inc_between(p, a, b)
    k, classes = min_reversible_partition(p, pairs, backend)
    return k, {q: c + 1 for c, cls in enumerate(classes) for q in cls}


def is_proper_coloring(p: Poset, coloring: dict) -> bool:
    """No colour class contains an alternating cycle."""
    by_colour: dict[int, list[IncPair]] = {}
    for q, c in coloring.items():
        by_colour.setdefault(c, []).append(IncPair(*q))
    for cls in by_colour.values():
        g = pair_digraph(p, cls)
        if shortest_cycle(g) is not None:
            return False
    return True


def largest_standard_example(p: Poset) -> tuple[int, tuple[list[int], list[int]] | None]:
    """Largest ``d >= 2`` with points ``a_i < b_j`` exactly when ``i != j``; 0 if none.

    Standard examples are cliques in the graph on incomparable pairs where
    ``(a, b)`` and ``(a', b')`` are adjacent iff ``a < b'`` and ``a' < b``.
    """
    pairs = inc_pairs(p)
    by_first = [0] * p.n
    by_second = [0] * p.n
    for j, (a, b) in enumerate(pairs):
        by_first[a] |= 1 << j
        by_second[b] |= 1 << j
    adj = []
    for a, b in pairs:
        second_above_a = 0
        for z in iter_bits(p.up[a]):
            second_above_a |= by_second[z]
        first_below_b = 0
        for z in iter_bits(p.down[b]):
            first_below_b |= by_first[z]
        adj.append(second_above_a & first_below_b)
    clique = kernels.max_clique(adj)
    if len(clique) < 2:
        return 0, None
    chosen = sorted(pairs[i] for i in clique)
    return len(chosen), ([a for a, _ in chosen], [b for _, b in chosen])


def is_standard_example(p: Poset, a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b) or len(set(a) | set(b)) != 2 * len(a):
        return False
    return all(p.less(x, y) == (i != j) for i, x in enumerate(a) for j, y in enumerate(b)) and all(
        p.incomparable(a[i], a[j]) and p.incomparable(b[i], b[j])
        for i in range(len(a))
        for j in range(i + 1, len(a))
    )
