"""Layered unfolding of extreme points and the support-set selection built on it.

Unfolding from a minimal root ``a0`` alternates between maximal points
reachable from the previous minimal layer and minimal points below the new
maximal layer::

    A_0 = {a0},  B_1,  A_1,  B_2,  ...,  A_{m-1},  B_m

Every comparability between an ``A_i`` point and a maximal point lands in
``B_i`` or ``B_{i+1}``; :func:`verify_star` checks this.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .bits import iter_bits, mask_of
from .dimension import IncPair, chi, chi_coloring, inc_between, is_proper_coloring
from .errors import ChiTooSmall, Disconnected, ImproperInputColoring, InvariantViolation, RootNotMinimal
from .poset import PointSet, Poset, components_mask, cover_path_within, is_connected_mask

SAME = "same-layer"
NEXT = "next-layer"
AVOIDS = "A'-avoids-S"
BELOW = "A'-below-S"


@dataclass(frozen=True)
class Unfolding:
    root: int
    a_layers: tuple[PointSet, ...]
    b_layers: tuple[PointSet, ...]

    @property
    def m(self) -> int:
        return len(self.a_layers)

    def A(self, i: int) -> PointSet:
        return self.a_layers[i] if 0 <= i < self.m else PointSet()

    def B(self, i: int) -> PointSet:
        return self.b_layers[i - 1] if 1 <= i <= self.m else PointSet()

    def layer_of(self) -> tuple[dict[int, int], dict[int, int]]:
        a_idx = {x: i for i, layer in enumerate(self.a_layers) for x in layer}
        b_idx = {y: i + 1 for i, layer in enumerate(self.b_layers) for y in layer}
        return a_idx, b_idx

    def to_dict(self) -> dict:
        return {
            "root": self.root,
            "m": self.m,
            "a_layers": [sorted(layer) for layer in self.a_layers],
            "b_layers": [sorted(layer) for layer in self.b_layers],
        }


def unfold(p: Poset, a: Iterable[int], b: Iterable[int], a0: int) -> Unfolding:
    amask, bmask = mask_of(a), mask_of(b)
    if not amask >> a0 & 1:
        raise RootNotMinimal(f"root {a0} is not in the minimal-side set")
    region = p.upset_mask(amask) & p.downset_mask(bmask)
    if any(p.down[x] & region for x in iter_bits(amask)):
        raise RootNotMinimal("minimal-side set has points that are not minimal in the region")
    if any(p.up[y] & region for y in iter_bits(bmask)):
        raise ValueError("maximal-side set has points that are not maximal in the region")
    if (amask | bmask) & ~region or not is_connected_mask(p, region):
        raise Disconnected("the region between the two sets is not connected in the cover graph")

    a_layers = [1 << a0]
    b_layers = []
    used_a, used_b = 1 << a0, 0
    while True:
        prev = a_layers[-1]
        up = p.upset_mask(prev)
        new_b = bmask & ~used_b & up
        used_b |= new_b
        b_layers.append(new_b)
        down = p.downset_mask(new_b)
        new_a = amask & ~used_a & down
        if not new_a:
            break
        used_a |= new_a
        a_layers.append(new_a)
    if used_a != amask or used_b != bmask:
        raise Disconnected("layers do not exhaust the input sets")
    to_set = lambda m: PointSet(iter_bits(m))  # noqa: E731
    return Unfolding(a0, tuple(map(to_set, a_layers)), tuple(map(to_set, b_layers)))


def verify_star(p: Poset, u: Unfolding) -> bool:
    """Both layer-locality clauses for every comparable (minimal-side, maximal-side) pair."""
    a_idx, b_idx = u.layer_of()
    for x, i in a_idx.items():
        for y, j in b_idx.items():
            if p.leq(x, y) and j not in (i, i + 1):
                return False
    return True


@dataclass(frozen=True)
class HeavyLayer:
    ell: int
    case: str
    chi_value: int
    chi_total: int
    table: dict = field(default_factory=dict, compare=False)


def layer_chis(p: Poset, u: Unfolding) -> dict[tuple[str, int], int]:
    out = {}
    for ell in range(1, u.m):
        out[(SAME, ell)] = chi(p, u.A(ell), u.B(ell))
        out[(NEXT, ell)] = chi(p, u.A(ell), u.B(ell + 1))
    return out


def heavy_layer(p: Poset, u: Unfolding, chi_total: int | None = None) -> HeavyLayer:
    """The layer pair of largest ``chi``; it always carries at least half of the total."""
    all_a = PointSet().union(*u.a_layers)
    all_b = PointSet().union(*u.b_layers)
    if chi_total is None:
        chi_total = chi(p, all_a, all_b)
    if chi_total < 3:
        raise ChiTooSmall(f"chi(A, B) = {chi_total} < 3")
    table = layer_chis(p, u)
    best = None
    for ell in range(1, u.m):
        for case in (SAME, NEXT):
            value = table[(case, ell)]
            if best is None or value > best[2]:
                best = (ell, case, value)
    if best is None or 2 * best[2] < chi_total:
        raise InvariantViolation("heavy-layer", f"no layer carries half of chi = {chi_total}")
    return HeavyLayer(best[0], best[1], best[2], chi_total, table)


def _check_layer_coloring(p: Poset, pairs: list[IncPair], coloring: dict, what: str) -> None:
    if set(map(tuple, coloring)) != set(map(tuple, pairs)):
        raise ImproperInputColoring(f"{what}: colouring does not cover exactly the incomparable pairs")
    if any(not isinstance(c, int) or c < 1 for c in coloring.values()):
        raise ImproperInputColoring(f"{what}: colours must be positive integers")
    if not is_proper_coloring(p, coloring):
        raise ImproperInputColoring(f"{what}: a colour class contains an alternating cycle")


def optimal_layer_colorings(p: Poset, u: Unfolding) -> tuple[dict[int, dict], dict[int, dict]]:
    same = {i: chi_coloring(p, u.A(i), u.B(i))[1] for i in range(1, u.m)}
    nxt = {i: chi_coloring(p, u.A(i), u.B(i + 1))[1] for i in range(0, u.m)}
    return same, nxt


def combine_colorings(p: Poset, u: Unfolding, same: dict[int, dict], nxt: dict[int, dict]) -> tuple[dict, int]:
    """Glue per-layer colourings into one colouring of all of ``Inc(A, B)``.

    ``same[i]`` colours ``Inc(A_i, B_i)`` for ``1 <= i < m`` and ``nxt[i]``
    colours ``Inc(A_i, B_{i+1})`` for ``0 <= i < m``, both with colours
    ``1, 2, ...``.  Pairs reaching back (``a`` in a later layer than ``b``) share
    one extra colour and pairs skipping ahead share another; when both layer
    families are non-trivial these two reuse existing colours.  Returns the
    colouring and the number of colours available to it.
    """
    for i in range(1, u.m):
        _check_layer_coloring(p, inc_between(p, u.A(i), u.B(i)), same.get(i, {}), f"same layer {i}")
    for i in range(0, u.m):
        _check_layer_coloring(p, inc_between(p, u.A(i), u.B(i + 1)), nxt.get(i, {}), f"next layer {i}")
    chi1 = max((c for i in range(1, u.m) for c in same.get(i, {}).values()), default=0)
    chi2 = max((c for i in range(0, u.m) for c in nxt.get(i, {}).values()), default=0)

    if chi1 > 0 and chi2 > 0:
        back, ahead, total = 1, chi1 + 1, chi1 + chi2
    elif chi1 > 0:
        back, ahead, total = 1, chi1 + 1, chi1 + 1
    elif chi2 > 0:
        back, ahead, total = chi2 + 1, 1, chi2 + 1
    else:
        back, ahead, total = 1, 2, 2

    a_idx, b_idx = u.layer_of()
    phi = {}
    all_a = sorted(a_idx)
    all_b = sorted(b_idx)
    for q in inc_between(p, all_a, all_b):
        i, j = a_idx[q.x], b_idx[q.y]
        if i == j:
            phi[q] = same[i][q]
        elif j == i + 1:
            phi[q] = chi1 + nxt[i][q] if chi1 > 0 else nxt[i][q]
        elif i > j:
            phi[q] = back
        else:
            phi[q] = ahead
    if not is_proper_coloring(p, phi):
        raise InvariantViolation("combined-coloring", "glued colouring has a monochromatic alternating cycle")
    return phi, total


@dataclass(frozen=True)
class SupportSelection:
    a_prime: PointSet
    b_prime: PointSet
    s: PointSet
    case_tag: str
    ell: int = 0
    layer_case: str = ""
    chi_before: int = 0
    chi_after: int = 0
    unfolding: Unfolding | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "a_prime": sorted(self.a_prime),
            "b_prime": sorted(self.b_prime),
            "s": sorted(self.s),
            "case": self.case_tag,
            "ell": self.ell,
            "layer_case": self.layer_case,
            "chi_before": self.chi_before,
            "chi_after": self.chi_after,
            "unfolding": self.unfolding.to_dict() if self.unfolding else None,
        }


def heaviest_component(p: Poset, a: Iterable[int], b: Iterable[int]) -> tuple[int, int, int]:
    """Restrict to the cover-connected piece of ``Up(a) & D(b)`` with the largest ``chi``.

    Returns ``(a'' mask, b'' mask, chi)``; ties go to the piece with the lowest point.
    """
    amask, bmask = mask_of(a), mask_of(b)
    region = p.upset_mask(amask) & p.downset_mask(bmask)
    best = None
    for comp in components_mask(p, region):
        ak, bk = amask & comp, bmask & comp
        value = chi(p, iter_bits(ak), iter_bits(bk))
        if best is None or value > best[2]:
            best = (ak, bk, value)
    return best if best is not None else (0, 0, 0)


def select_support(p: Poset, a: Iterable[int], b: Iterable[int]) -> SupportSelection:
    a, b = PointSet(a), PointSet(b)
    chi_ab = chi(p, a, b)
    if chi_ab < 3:
        raise ChiTooSmall(f"chi(A, B) = {chi_ab} < 3")
    ak, bk, chi_k = heaviest_component(p, a, b)
    if chi_k != chi_ab:
        raise InvariantViolation("component-chi", f"best component has chi {chi_k}, whole has {chi_ab}")
    a0 = (ak & -ak).bit_length() - 1
    u = unfold(p, iter_bits(ak), iter_bits(bk), a0)
    hl = heavy_layer(p, u, chi_ab)
    ell = hl.ell

    lower = 0
    for i in range(0, ell):
        lower |= p.upset_mask(mask_of(u.A(i)))
    if hl.case == SAME:
        upper = 0
        for i in range(1, ell):
            upper |= p.downset_mask(mask_of(u.B(i)))
        allowed = (lower & upper) | 1 << a0
        targets = u.A(ell - 1)
        a_prime, b_prime, tag = u.A(ell), u.B(ell), AVOIDS
    else:
        upper = 0
        for i in range(1, ell + 1):
            upper |= p.downset_mask(mask_of(u.B(i)))
        allowed = lower & upper
        targets = u.B(ell)
        a_prime, b_prime, tag = u.A(ell), u.B(ell + 1), BELOW

    s = 0
    for t in sorted(targets):
        path = cover_path_within(p, t, a0, allowed)
        if path is None:
            raise InvariantViolation("support-path", f"no allowed cover path from {t} to {a0}")
        s |= mask_of(path)
    return SupportSelection(
        a_prime, b_prime, PointSet(iter_bits(s)), tag, ell, hl.case, chi_ab, hl.chi_value, u
    )


def check_support(p: Poset, a: Iterable[int], b: Iterable[int], sel: SupportSelection, chi_ab: int | None = None) -> list[str]:
    """Names of the violated support postconditions (empty when all hold)."""
    a, b = PointSet(a), PointSet(b)
    amask, bmask, smask = mask_of(a), mask_of(b), mask_of(sel.s)
    bad = []
    if not sel.a_prime <= a or not sel.b_prime <= b:
        bad.append("subsets")
    if not is_connected_mask(p, smask):
        bad.append("connected")
    region = p.upset_mask(amask) & p.downset_mask(bmask)
    if smask & ~region:
        bad.append("within-region")
    if chi_ab is None:
        chi_ab = chi(p, a, b)
    if 2 * chi(p, sel.a_prime, sel.b_prime) < chi_ab:
        bad.append("half-chi")
    down_s, up_s = p.downset_mask(smask), p.upset_mask(smask)
    ap, bp = mask_of(sel.a_prime), mask_of(sel.b_prime)
    if sel.case_tag == AVOIDS:
        ok = not (ap & down_s) and not (bp & ~up_s)
    elif sel.case_tag == BELOW:
        ok = not (ap & ~down_s) and not (bp & up_s)
    else:
        ok = False
    if not ok:
        bad.append("separation")
    return bad
