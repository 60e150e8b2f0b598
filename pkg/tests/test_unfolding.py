import random

import pytest

import oracles
from corpus import connected_chi3
from coverdim.dimension import chi, chi_coloring, inc_between, is_proper_coloring
from coverdim.errors import ChiTooSmall, Disconnected, ImproperInputColoring, RootNotMinimal
from coverdim.generators import chain, kelly, kelly_points, standard_example
from coverdim.poset import PointSet, poset_from_cover
from coverdim.unfolding import (
    AVOIDS,
    BELOW,
    NEXT,
    SAME,
    Unfolding,
    check_support,
    combine_colorings,
    heavy_layer,
    layer_chis,
    optimal_layer_colorings,
    select_support,
    unfold,
    verify_star,
)


def _extremes(p):
    return sorted(p.minimals()), sorted(p.maximals())


def test_unfold_standard_example():
    p = standard_example(3)
    u = unfold(p, [0, 1, 2], [3, 4, 5], 0)
    assert u.m == 2
    assert u.A(0) == {0} and u.B(1) == {4, 5} and u.A(1) == {1, 2} and u.B(2) == {3}
    assert verify_star(p, u)


def test_unfold_two_chain():
    u = unfold(chain(2), [0], [1], 0)
    assert u.m == 1 and u.A(0) == {0} and u.B(1) == {1}


def test_unfold_kelly():
    p = kelly(4)
    a, b = _extremes(p)
    u = unfold(p, a, b, 0)
    assert PointSet().union(*u.a_layers) == set(a)
    assert PointSet().union(*u.b_layers) == set(b)
    assert verify_star(p, u)


def test_unfold_errors():
    with pytest.raises(RootNotMinimal):
        unfold(standard_example(3), [1, 2], [3, 4, 5], 0)
    with pytest.raises(Disconnected):
        unfold(standard_example(2), [0, 1], [2, 3], 0)


def test_corrupted_unfolding_fails_star():
    p = standard_example(3)
    u = unfold(p, [0, 1, 2], [3, 4, 5], 0)
    # push b_2 from B_1 into a new third layer
    bad = Unfolding(0, u.a_layers + (PointSet(),), (PointSet({5}), u.B(2), PointSet({4})))
    assert not verify_star(p, bad)


def test_heavy_layer_standard_example():
    p = standard_example(3)
    hl = heavy_layer(p, unfold(p, [0, 1, 2], [3, 4, 5], 0))
    assert (hl.ell, hl.case, hl.chi_value, hl.chi_total) == (1, SAME, 2, 3)


def test_heavy_layer_rejects_small_chi():
    p = poset_from_cover(4, [(0, 3), (1, 2), (0, 2)])
    with pytest.raises(ChiTooSmall):
        heavy_layer(p, unfold(p, [0, 1], [2, 3], 0))


def test_heavy_layer_selects_only_incomparable_layer():
    # one layer with an S_3 inside, everything else comparable
    p = standard_example(4)
    u = unfold(p, [0, 1, 2, 3], [4, 5, 6, 7], 0)
    hl = heavy_layer(p, u)
    assert hl.ell == 1 and hl.case == SAME and hl.chi_value == 3


def test_combine_colorings_standard_example():
    p = standard_example(3)
    u = unfold(p, [0, 1, 2], [3, 4, 5], 0)
    same, nxt = optimal_layer_colorings(p, u)
    phi, total = combine_colorings(p, u, same, nxt)
    assert is_proper_coloring(p, phi)
    assert max(phi.values()) <= total
    assert set(phi) == set(inc_between(p, [0, 1, 2], [3, 4, 5]))


def test_combine_colorings_rejects_bad_input():
    p = standard_example(3)
    u = unfold(p, [0, 1, 2], [3, 4, 5], 0)
    same, nxt = optimal_layer_colorings(p, u)
    one = {q: 1 for q in same[1]}
    with pytest.raises(ImproperInputColoring):
        combine_colorings(p, u, {1: one}, nxt)
    with pytest.raises(ImproperInputColoring):
        combine_colorings(p, u, {}, nxt)


def test_combine_uses_one_extra_colour_when_next_layers_trivial():
    p = standard_example(3)
    u = unfold(p, [0, 1, 2], [3, 4, 5], 0)
    same, nxt = optimal_layer_colorings(p, u)
    chi1 = max(c for col in same.values() for c in col.values())
    assert all(not col for col in nxt.values())
    _, total = combine_colorings(p, u, same, nxt)
    assert total == chi1 + 1


def test_select_support_standard_example():
    p = standard_example(3)
    sel = select_support(p, [0, 1, 2], [3, 4, 5])
    assert sel.case_tag == AVOIDS and sel.ell == 1
    assert sel.a_prime == {1, 2} and sel.b_prime == {4, 5}
    assert 0 in sel.s
    assert check_support(p, [0, 1, 2], [3, 4, 5], sel) == []


@pytest.mark.parametrize("d", [4, 5, 6])
def test_select_support_kelly(d):
    p = kelly(d)
    a, b = kelly_points(d)
    sel = select_support(p, a, b)
    assert check_support(p, a, b, sel) == []


def test_select_support_rejects_chi_two():
    p = standard_example(3)
    with pytest.raises(ChiTooSmall):
        select_support(p, [1, 2], [4, 5])


def _independent_support_check(p, a, b, sel):
    less = [[p.less(u, v) for v in range(p.n)] for u in range(p.n)]
    leq = lambda x, y: x == y or less[x][y]  # noqa: E731
    s = set(sel.s)
    assert oracles.connected(s, p.cover_arcs())
    assert all(any(leq(x, z) for x in a) and any(leq(z, y) for y in b) for z in s)
    assert 2 * oracles.chi(less, sorted(sel.a_prime), sorted(sel.b_prime)) >= oracles.chi(less, a, b)
    below_s = {x for x in range(p.n) if any(leq(x, z) for z in s)}
    above_s = {x for x in range(p.n) if any(leq(z, x) for z in s)}
    if sel.case_tag == AVOIDS:
        assert not (sel.a_prime & below_s) and sel.b_prime <= above_s
    else:
        assert sel.case_tag == BELOW
        assert sel.a_prime <= below_s and not (sel.b_prime & above_s)


def test_support_against_brute_force_chi():
    checked = 0
    for _, p in connected_chi3(500):
        if p.n > 8:
            continue
        a, b = _extremes(p)
        _independent_support_check(p, a, b, select_support(p, a, b))
        checked += 1
        if checked == 40:
            break
    assert checked == 40


def test_random_roots_keep_lemma():
    rng = random.Random(3)
    for _, p in connected_chi3(500)[:120]:
        a, b = _extremes(p)
        total = chi(p, a, b)
        u = unfold(p, a, b, rng.choice(a))
        assert verify_star(p, u)
        table = layer_chis(p, u)
        assert 2 * max(table.values()) >= total


def test_combined_colouring_on_corpus():
    for _, p in connected_chi3(500)[:80]:
        a, b = _extremes(p)
        u = unfold(p, a, b, a[0])
        same, nxt = optimal_layer_colorings(p, u)
        phi, total = combine_colorings(p, u, same, nxt)
        assert is_proper_coloring(p, phi)
        assert max(phi.values()) <= total
        assert total >= chi_coloring(p, a, b)[0]


def test_both_layer_cases_appear():
    cases = {}
    for _, p in connected_chi3(500):
        sel = select_support(p, *_extremes(p))
        cases[sel.layer_case] = sel.case_tag
    assert cases == {SAME: AVOIDS, NEXT: BELOW}
