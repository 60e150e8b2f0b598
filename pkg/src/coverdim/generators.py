"""Poset families used as inputs and test corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BadParameters
from .poset import Poset, poset_from_cover


def standard_example(d: int) -> Poset:
    """``S_d``: points ``a_i = i-1`` and ``b_j = d+j-1`` with ``a_i < b_j`` iff ``i != j``."""
    if d < 2:
        raise BadParameters("standard example needs d >= 2")
    arcs = [(i, d + j) for i in range(d) for j in range(d) if i != j]
    labels = [f"a{i + 1}" for i in range(d)] + [f"b{j + 1}" for j in range(d)]
    return poset_from_cover(2 * d, arcs, labels)


def kelly_points(d: int) -> tuple[list[int], list[int]]:
    """Indices of the designated ``a_1..a_d`` and ``b_1..b_d`` in :func:`kelly`."""
    return list(range(d)), list(range(d, 2 * d))


def kelly(d: int) -> Poset:
    """Kelly-type poset with a planar cover graph containing ``S_d``.

    Two cover chains ``x_1 < ... < x_{d-1}`` and ``y_1 < ... < y_{d-1}`` carry
    the comparabilities: ``a_i < x_i``, ``x_{j-1} < b_j``, ``a_i < y_{d-i+1}``
    and ``y_{d-j} < b_j``, so ``a_i < b_j`` through the x-chain iff ``i < j``
    and through the y-chain iff ``i > j``.  Height is ``d + 1``.
    """
    if d < 3:
        raise BadParameters("kelly needs d >= 3")
    a = lambda i: i - 1  # noqa: E731
    b = lambda j: d + j - 1  # noqa: E731
    x = lambda i: 2 * d + i - 1  # noqa: E731
    y = lambda i: 3 * d - 1 + i - 1  # noqa: E731
    arcs = []
    for i in range(1, d - 1):
        arcs += [(x(i), x(i + 1)), (y(i), y(i + 1))]
    for i in range(1, d):
        arcs.append((a(i), x(i)))
    for j in range(2, d + 1):
        arcs.append((x(j - 1), b(j)))
    for i in range(2, d + 1):
        arcs.append((a(i), y(d - i + 1)))
    for j in range(1, d):
        arcs.append((y(d - j), b(j)))
    labels = (
        [f"a{i}" for i in range(1, d + 1)]
        + [f"b{j}" for j in range(1, d + 1)]
        + [f"x{i}" for i in range(1, d)]
        + [f"y{i}" for i in range(1, d)]
    )
    return poset_from_cover(4 * d - 2, arcs, labels)


def chain(n: int) -> Poset:
    if n < 1:
        raise BadParameters("chain needs n >= 1")
    return poset_from_cover(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    if n < 1:
        raise BadParameters("antichain needs n >= 1")
    return poset_from_cover(n, [])


def boolean_lattice(k: int) -> Poset:
    """Subsets of a ``k``-set; point ``s`` is the subset with bitmask ``s``."""
    if not 1 <= k <= 6:
        raise BadParameters("boolean lattice supports 1 <= k <= 6")
    n = 1 << k
    arcs = [(s, s | 1 << i) for s in range(n) for i in range(k) if not s >> i & 1]
    return poset_from_cover(n, arcs)


def random_poset(n: int, prob: float, seed: int) -> Poset:
    """Random DAG on the order ``0..n-1`` with arc probability ``prob``, closed."""
    if n < 1 or not 0.0 <= prob <= 1.0:
        raise BadParameters("random_poset needs n >= 1 and 0 <= prob <= 1")
    rng = random.Random(seed)
    arcs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]
    return poset_from_cover(n, arcs)


def random_bipartite(n_min: int, n_max: int, prob: float, seed: int) -> Poset:
    """Height-at-most-2 poset: each minimal ``u`` is below each maximal ``v`` with probability ``prob``."""
    if n_min < 1 or n_max < 1 or not 0.0 <= prob <= 1.0:
        raise BadParameters("random_bipartite needs positive sides and 0 <= prob <= 1")
    rng = random.Random(seed)
    arcs = [(u, n_min + v) for u in range(n_min) for v in range(n_max) if rng.random() < prob]
    return poset_from_cover(n_min + n_max, arcs)


def random_tree_cover(n: int, seed: int) -> Poset:
    """Poset whose cover graph is a random labelled tree with random edge directions."""
    if n < 1:
        raise BadParameters("random_tree_cover needs n >= 1")
    rng = random.Random(seed)
    arcs = []
    for v in range(1, n):
        u = rng.randrange(v)
        arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    return poset_from_cover(n, arcs)


def random_interval_order(n: int, seed: int, span: int | None = None) -> Poset:
    """Interval order: ``u < v`` iff interval ``u`` ends before interval ``v`` starts."""
    if n < 1:
        raise BadParameters("random_interval_order needs n >= 1")
    rng = random.Random(seed)
    span = span or 2 * n
    ivs = []
    for _ in range(n):
        lo = rng.randrange(span)
        ivs.append((lo, lo + rng.randrange(1, max(2, span // 2))))
    arcs = [(u, v) for u in range(n) for v in range(n) if ivs[u][1] < ivs[v][0]]
    return poset_from_cover(n, arcs)


@dataclass(frozen=True)
class GenSpec:
    family: str
    d: int | None = None
    n: int | None = None
    k: int | None = None
    prob: float | None = None
    seed: int = 0


FAMILIES = ("standard", "kelly", "chain", "antichain", "boolean", "random", "bipartite", "tree", "interval")


def corpus(spec: GenSpec) -> Poset:
    """Build one poset from a :class:`GenSpec`; same spec and seed give the same poset."""
    f = spec.family

    def need(name):
        value = getattr(spec, name)
        if value is None:
            raise BadParameters(f"family {f!r} needs --{name}")
        return value

    if f == "standard":
        return standard_example(need("d"))
    if f == "kelly":
        return kelly(need("d"))
    if f == "chain":
        return chain(need("n"))
    if f == "antichain":
        return antichain(need("n"))
    if f == "boolean":
        return boolean_lattice(need("k"))
    if f == "random":
        return random_poset(need("n"), spec.prob if spec.prob is not None else 0.3, spec.seed)
    if f == "bipartite":
        n = need("n")
        return random_bipartite(n // 2 or 1, n - n // 2 or 1, spec.prob if spec.prob is not None else 0.6, spec.seed)
    if f == "tree":
        return random_tree_cover(need("n"), spec.seed)
    if f == "interval":
        return random_interval_order(need("n"), spec.seed)
    raise BadParameters(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")
