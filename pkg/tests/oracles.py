"""Brute-force reference implementations used as independent test oracles.

Nothing here imports the package's algorithms; orders come in as a
boolean ``less`` matrix (``less[u][v]`` iff ``u < v``).
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb


def closure(n, arcs):
    less = [[False] * n for _ in range(n)]
    for u, v in arcs:
        less[u][v] = True
    for w in range(n):
        for u in range(n):
            if less[u][w]:
                for v in range(n):
                    if less[w][v]:
                        less[u][v] = True
    return less


def covers(less):
    n = len(less)
    return {
        (u, v)
        for u in range(n)
        for v in range(n)
        if less[u][v] and not any(less[u][w] and less[w][v] for w in range(n))
    }


def incomparable_pairs(less):
    n = len(less)
    return [(x, y) for x in range(n) for y in range(n) if x != y and not less[x][y] and not less[y][x]]


def linear_extensions(less):
    n = len(less)
    out = []
    for perm in permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[u] < pos[v] for u in range(n) for v in range(n) if less[u][v]):
            out.append(perm)
    return out


def reversed_by(ext, pairs):
    """Bitmask over ``pairs``: bit i set iff the extension puts ``y`` before ``x``."""
    pos = {v: i for i, v in enumerate(ext)}
    m = 0
    for i, (x, y) in enumerate(pairs):
        if pos[y] < pos[x]:
            m |= 1 << i
    return m


def reversible(less, subset, exts=None):
    exts = exts if exts is not None else linear_extensions(less)
    for ext in exts:
        pos = {v: i for i, v in enumerate(ext)}
        if all(pos[y] < pos[x] for x, y in subset):
            return True
    return False


def min_cover(pairs, masks):
    """Fewest masks whose union covers all of ``pairs`` (0 when empty)."""
    full = (1 << len(pairs)) - 1
    if not full:
        return 0
    masks = sorted(set(masks))
    masks = [m for m in masks if not any(m != o and m | o == o for o in masks)]
    for k in range(1, len(pairs) + 1):
        for combo in combinations(masks, k):
            acc = 0
            for m in combo:
                acc |= m
            if acc == full:
                return k
    raise AssertionError("pairs cannot be covered")


def dim(less):
    """Smallest realizer size by search over linear extensions."""
    pairs = incomparable_pairs(less)
    if not pairs:
        return 1
    exts = linear_extensions(less)
    return min_cover(pairs, [reversed_by(e, pairs) for e in exts])


def chi(less, a, b):
    pairs = [(x, y) for x in a for y in b if x != y and not less[x][y] and not less[y][x]]
    if not pairs:
        return 0
    exts = linear_extensions(less)
    return min_cover(pairs, [reversed_by(e, pairs) for e in exts])


def minimals(less):
    n = len(less)
    return [v for v in range(n) if not any(less[u][v] for u in range(n))]


def maximals(less):
    n = len(less)
    return [v for v in range(n) if not any(less[v][u] for u in range(n))]


def longest_cover_path(less, a, b):
    """Vertices on a longest directed path of covers from ``a`` to ``b``; None if none."""
    cov = covers(less)
    best = None

    def walk(u, length):
        nonlocal best
        if u == b:
            best = max(best or 0, length)
            return
        for x, y in cov:
            if x == u:
                walk(y, length + 1)

    walk(a, 1)
    return best


def chains(less, k):
    n = len(less)
    out = []
    for combo in combinations(range(n), k):
        if all(less[combo[i]][combo[j]] or less[combo[j]][combo[i]] for i in range(k) for j in range(i + 1, k)):
            out.append(combo)
    return out


def kk_free(less, k):
    cs = chains(less, k)
    for c1, c2 in combinations(cs, 2):
        if set(c1) & set(c2):
            continue
        if all(not less[x][y] and not less[y][x] for x in c1 for y in c2):
            return False
    return True


def height(less):
    n = len(less)
    h = [1] * n
    order = sorted(range(n), key=lambda v: sum(less[u][v] for u in range(n)))
    for v in order:
        for u in range(n):
            if less[u][v]:
                h[v] = max(h[v], h[u] + 1)
    return max(h) if n else 0


def paper_M(n, h):
    return comb(n, 2) ** (h**n)


def paper_L(M, h):
    # C(M+h, h) by the falling-factorial product, independent of math.comb
    num, den = 1, 1
    for i in range(h):
        num *= M + h - i
        den *= i + 1
    return 2 * (num // den) - 1


def connected(vertices, edges):
    vertices = set(vertices)
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for x, y in edges:
            for s, t in ((x, y), (y, x)):
                if s == u and t in vertices and t not in seen:
                    seen.add(t)
                    stack.append(t)
    return seen == vertices
