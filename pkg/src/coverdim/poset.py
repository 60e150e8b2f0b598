"""Finite posets over dense integer points.

A :class:`Poset` stores its strict order as one bitmask per point: bit ``v``
of ``up[u]`` is set iff ``u < v``.  Cover arcs are always derived from that
relation, never stored as an independent source of truth.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .bits import bits, iter_bits, mask_of
from .errors import CycleInRelation, EmptySet, IndexOutOfRange

PointSet = frozenset


class Poset:
    """Immutable finite poset on the points ``0..n-1``."""

    __slots__ = ("n", "up", "down", "labels", "__dict__")

    def __init__(self, n: int, up: Sequence[int], labels: Sequence | None = None, *, check: bool = True):
        if n < 1:
            raise ValueError("a poset needs at least one point")
        if len(up) != n:
            raise ValueError("need one upset mask per point")
        self.n = n
        self.up = tuple(up)
        down = [0] * n
        for u, m in enumerate(self.up):
            for v in iter_bits(m):
                down[v] |= 1 << u
        self.down = tuple(down)
        self.labels = tuple(labels) if labels is not None else None
        if check:
            self._check()

    def _check(self) -> None:
        full = (1 << self.n) - 1
        for u, m in enumerate(self.up):
            if m & ~full:
                raise IndexOutOfRange(f"point {u} relates to a point outside 0..{self.n - 1}")
            if m >> u & 1:
                raise CycleInRelation(f"{u} < {u}")
            for v in iter_bits(m):
                if self.up[v] & ~m:
                    raise ValueError(f"relation is not transitive at {u} < {v}")
                if self.up[v] >> u & 1:
                    raise CycleInRelation(f"{u} < {v} < {u}")

    # -- basic relation queries -------------------------------------------

    def less(self, u: int, v: int) -> bool:
        return bool(self.up[u] >> v & 1)

    def leq(self, u: int, v: int) -> bool:
        return u == v or bool(self.up[u] >> v & 1)

    def comparable(self, u: int, v: int) -> bool:
        return u == v or bool((self.up[u] | self.down[u]) >> v & 1)

    def incomparable(self, u: int, v: int) -> bool:
        return not self.comparable(u, v)

    @cached_property
    def lt(self) -> tuple[tuple[bool, ...], ...]:
        """The strict order as an ``n x n`` boolean matrix."""
        return tuple(tuple(bool(m >> v & 1) for v in range(self.n)) for m in self.up)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def incomparable_masks(self) -> tuple[int, ...]:
        return tuple(self.full_mask & ~(self.up[u] | self.down[u] | 1 << u) for u in range(self.n))

    # -- derived structure ----------------------------------------------------

    @cached_property
    def covers_up(self) -> tuple[int, ...]:
        """``covers_up[u]``: mask of points covering ``u``."""
        out = []
        for u in range(self.n):
            above = self.up[u]
            indirect = 0
            for v in iter_bits(above):
                indirect |= self.up[v]
            out.append(above & ~indirect)
        return tuple(out)

    @cached_property
    def covers_down(self) -> tuple[int, ...]:
        """``covers_down[v]``: mask of points covered by ``v``."""
        down = [0] * self.n
        for u, m in enumerate(self.covers_up):
            for v in iter_bits(m):
                down[v] |= 1 << u
        return tuple(down)

    @cached_property
    def cover_adjacency(self) -> tuple[int, ...]:
        return tuple(a | b for a, b in zip(self.covers_up, self.covers_down))

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n), key=lambda u: (self.down[u].bit_count(), u)))

    @cached_property
    def minimals_mask(self) -> int:
        return mask_of(u for u in range(self.n) if not self.down[u])

    @cached_property
    def maximals_mask(self) -> int:
        return mask_of(u for u in range(self.n) if not self.up[u])

    def minimals(self) -> PointSet:
        return PointSet(iter_bits(self.minimals_mask))

    def maximals(self) -> PointSet:
        return PointSet(iter_bits(self.maximals_mask))

    def upset_mask(self, mask: int) -> int:
        out = mask
        for s in iter_bits(mask):
            out |= self.up[s]
        return out

    def downset_mask(self, mask: int) -> int:
        out = mask
        for s in iter_bits(mask):
            out |= self.down[s]
        return out

    def upset(self, s: Iterable[int]) -> PointSet:
        return PointSet(iter_bits(self.upset_mask(self._mask(s))))

    def downset(self, s: Iterable[int]) -> PointSet:
        return PointSet(iter_bits(self.downset_mask(self._mask(s))))

    def _mask(self, s: Iterable[int]) -> int:
        if isinstance(s, int):
            raise TypeError("expected an iterable of points, not a mask")
        m = mask_of(s)
        if m >> self.n:
            raise IndexOutOfRange("point set exceeds the poset")
        return m

    @cached_property
    def heights(self) -> tuple[int, ...]:
        h = [0] * self.n
        for u in self.topological_order:
            h[u] = 1 + max((h[w] for w in iter_bits(self.covers_down[u])), default=0)
        return tuple(h)

    def height_of(self, x: int) -> int:
        return self.heights[x]

    @cached_property
    def height(self) -> int:
        return max(self.heights)

    def cover_arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.covers_up[u])]

    def dual(self) -> "Poset":
        return Poset(self.n, self.down, self.labels, check=False)

    def label(self, u: int):
        return self.labels[u] if self.labels is not None else u

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.n == other.n and self.up == other.up

    def __hash__(self) -> int:
        return hash((self.n, self.up))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={self.cover_arcs()})"


class CoverDigraph:
    """Transitive reduction of a poset: ``(u, v)`` is an arc iff ``v`` covers ``u``."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        self.n = n
        self.arcs = frozenset(arcs)

    def __repr__(self) -> str:
        return f"CoverDigraph(n={self.n}, arcs={sorted(self.arcs)})"


def poset_from_cover(n: int, covers: Iterable[tuple[int, int]], labels: Sequence | None = None) -> Poset:
    """Close an arbitrary relation into a poset; pairs need not be covers."""
    if n < 1:
        raise ValueError("a poset needs at least one point")
    succ = [0] * n
    indeg = [0] * n
    for u, v in covers:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"pair ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise CycleInRelation(f"{u} < {u}")
        if not succ[u] >> v & 1:
            succ[u] |= 1 << v
            indeg[v] += 1
    order = []
    queue = deque(u for u in range(n) if indeg[u] == 0)
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in iter_bits(succ[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) < n:
        raise CycleInRelation("relation closure contains a cycle")
    up = [0] * n
    for u in reversed(order):
        m = succ[u]
        for v in iter_bits(succ[u]):
            m |= up[v]
        up[u] = m
    return Poset(n, up, labels, check=False)


def cover_digraph(p: Poset) -> CoverDigraph:
    return CoverDigraph(p.n, p.cover_arcs())


def order_queries(p: Poset, s: Iterable[int]) -> dict[str, PointSet]:
    s = list(s)
    return {
        "upset": p.upset(s),
        "downset": p.downset(s),
        "minimals": p.minimals(),
        "maximals": p.maximals(),
    }


def height_of(p: Poset, x: int) -> int:
    return p.height_of(x)


def height(p: Poset) -> int:
    return p.height


def longest_directed_path_len(p: Poset, a: int, b: int) -> int | None:
    """Number of vertices on a longest directed cover path from ``a`` to ``b``."""
    if a == b:
        return 1
    if not p.less(a, b):
        return None
    interval = (p.up[a] & p.down[b]) | 1 << a | 1 << b
    best = {a: 1}
    for z in p.topological_order:
        if z == a or not interval >> z & 1:
            continue
        preds = [best[w] for w in iter_bits(p.covers_down[z] & interval) if w in best]
        if preds:
            best[z] = 1 + max(preds)
    return best[b]


def longest_path_to_set(p: Poset, a: int, targets: int) -> int | None:
    """Longest directed cover path from ``a`` to any point of the mask ``targets``."""
    vals = [longest_directed_path_len(p, a, t) for t in iter_bits(targets)]
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else None


def longest_path_from_set(p: Poset, sources: int, d: int) -> int | None:
    vals = [longest_directed_path_len(p, s, d) for s in iter_bits(sources)]
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else None


def _chain_height(p: Poset, mask: int) -> tuple[int, list[int]]:
    """Longest chain inside ``mask`` together with one witness (lowest-index ties)."""
    best: dict[int, tuple[int, int]] = {}
    for z in p.topological_order:
        if not mask >> z & 1:
            continue
        prev = -1
        length = 1
        for w in iter_bits(p.down[z] & mask):
            if best[w][0] + 1 > length:
                length = best[w][0] + 1
                prev = w
        best[z] = (length, prev)
    if not best:
        return 0, []
    top = max(best, key=lambda z: (best[z][0], -z))
    chain = []
    while top != -1:
        chain.append(top)
        top = best[top][1]
    return len(chain), chain[::-1]


def is_kk_free(p: Poset, k: int) -> tuple[bool, tuple[list[int], list[int]] | None]:
    """Check for two incomparable ``k``-chains; returns ``(free, witness)``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if p.height < k:
        return True, None
    inc = p.incomparable_masks

    def extend(chain: list[int], allowed_next: int, rest: int):
        if len(chain) == k:
            size, other = _chain_height(p, rest)
            if size >= k:
                return chain[:], other[:k]
            return None
        for z in iter_bits(allowed_next):
            r = rest & inc[z]
            if _chain_height(p, r)[0] < k:
                continue
            chain.append(z)
            found = extend(chain, p.up[z], r)
            chain.pop()
            if found:
                return found
        return None

    found = extend([], p.full_mask, p.full_mask)
    if found is None:
        return True, None
    return False, found


def min_max_reduction(p: Poset) -> Poset:
    """Attach fresh extreme points so that every critical pair becomes a min-max pair.

    Every non-extreme point gets a fresh minimal point below it and a fresh
    maximal point above it.  A maximal, non-minimal ``x`` that starts a
    critical pair ``(x, y)`` also gets a fresh minimal point below it, and a
    minimal, non-maximal ``y`` that ends one gets a fresh maximal point above
    it; without these, a poset whose points are all extreme keeps its pairs
    among maximal (or minimal) points out of reach.  Original points keep
    their indices; fresh points follow in ascending order of their anchor,
    the minimal one first.
    """
    crit_first = crit_second = 0
    for x in range(p.n):
        for y in iter_bits(p.incomparable_masks[x]):
            # critical: D(x) within D(y) and U(y) within U(x)
            if not p.down[x] & ~p.down[y] and not p.up[y] & ~p.up[x]:
                crit_first |= 1 << x
                crit_second |= 1 << y
    arcs = p.cover_arcs()
    labels = list(p.labels) if p.labels is not None else None
    nxt = p.n
    for x in range(p.n):
        inner = bool(p.up[x] and p.down[x])
        if p.down[x] and (inner or crit_first >> x & 1):
            arcs.append((nxt, x))
            if labels is not None:
                labels.append(f"min({p.labels[x]})")
            nxt += 1
        if p.up[x] and (inner or crit_second >> x & 1):
            arcs.append((x, nxt))
            if labels is not None:
                labels.append(f"max({p.labels[x]})")
            nxt += 1
    return poset_from_cover(nxt, arcs, labels)


def components_mask(p: Poset, within: int | None = None) -> list[int]:
    """Connected components of the cover graph restricted to ``within``."""
    if within is None:
        within = p.full_mask
    adj = p.cover_adjacency
    comps = []
    left = within
    while left:
        start = left & -left
        comp = start
        frontier = start
        while frontier:
            u = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[u] & within & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        left &= ~comp
    return comps


def connected_components_cover(p: Poset) -> list[PointSet]:
    return [PointSet(iter_bits(c)) for c in components_mask(p)]


def is_connected_mask(p: Poset, mask: int) -> bool:
    return mask != 0 and len(components_mask(p, mask)) == 1


def cover_path_within(p: Poset, src: int, dst: int, allowed: int) -> list[int] | None:
    """Shortest path in the cover graph using only points of ``allowed``."""
    if not (allowed >> src & 1 and allowed >> dst & 1):
        return None
    prev = {src: -1}
    queue = deque([src])
    adj = p.cover_adjacency
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u != -1:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for v in iter_bits(adj[u] & allowed):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    return None


def cover_chain(p: Poset, lo: int, hi: int) -> list[int]:
    """A chain of cover relations ``lo = y_1 < ... < y_r = hi`` (shortest, lowest-index)."""
    if lo == hi:
        return [lo]
    if not p.less(lo, hi):
        raise ValueError(f"{lo} is not below {hi}")
    allowed = (p.up[lo] & p.down[hi]) | 1 << lo | 1 << hi
    prev = {lo: -1}
    queue = deque([lo])
    while queue:
        u = queue.popleft()
        if u == hi:
            break
        for v in iter_bits(p.covers_up[u] & allowed):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    chain = []
    u = hi
    while u != -1:
        chain.append(u)
        u = prev[u]
    return chain[::-1]


def induced(p: Poset, s: Iterable[int]) -> Poset:
    """Subposet on ``s``; point ``i`` of the result is ``sorted(s)[i]``.

    The result's labels record the original labels of the chosen points.
    """
    pts = sorted(set(s))
    if not pts:
        raise EmptySet("induced subposet of an empty set")
    if pts[-1] >= p.n or pts[0] < 0:
        raise IndexOutOfRange("point set exceeds the poset")
    index = {x: i for i, x in enumerate(pts)}
    up = []
    for x in pts:
        up.append(mask_of(index[v] for v in iter_bits(p.up[x]) if v in index))
    return Poset(len(pts), up, [p.label(x) for x in pts], check=False)


def relabel_identity(p: Poset) -> Poset:
    return Poset(p.n, p.up, None, check=False)


def chains_of_length(p: Poset, k: int) -> list[tuple[int, ...]]:
    """All ``k``-element chains, listed bottom-up (brute force helper)."""
    out = []
    for combo in combinations(p.topological_order, k):
        if all(p.less(combo[i], combo[i + 1]) for i in range(k - 1)):
            out.append(combo)
    return out


# -- text format -------------------------------------------------------------


def parse_poset(text: str) -> Poset:
    """Parse the line format ``poset <n>`` followed by ``cover <u> <v>`` lines."""
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "poset" and len(parts) == 2 and n is None:
            n = int(parts[1])
        elif parts[0] == "cover" and len(parts) == 3 and n is not None:
            pairs.append((int(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    if n is None:
        raise ValueError("missing 'poset <n>' header")
    return poset_from_cover(n, pairs)


def format_poset(p: Poset, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"poset {p.n}")
    lines.extend(f"cover {u} {v}" for u, v in p.cover_arcs())
    return "\n".join(lines) + "\n"


def from_mask(mask: int) -> PointSet:
    return PointSet(iter_bits(mask))


__all__ = [
    "Poset",
    "PointSet",
    "CoverDigraph",
    "poset_from_cover",
    "cover_digraph",
    "order_queries",
    "height_of",
    "height",
    "longest_directed_path_len",
    "is_kk_free",
    "min_max_reduction",
    "connected_components_cover",
    "induced",
    "parse_poset",
    "format_poset",
    "bits",
]
