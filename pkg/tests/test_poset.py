import random

import pytest
from hypothesis import given, settings

import oracles
from conftest import posets, random_order
from coverdim.errors import CycleInRelation, EmptySet, IndexOutOfRange
from coverdim.generators import antichain, boolean_lattice, chain, kelly, standard_example
from coverdim.poset import (
    connected_components_cover,
    cover_digraph,
    format_poset,
    induced,
    is_kk_free,
    longest_directed_path_len,
    min_max_reduction,
    order_queries,
    parse_poset,
    poset_from_cover,
)


def test_chain_closure():
    p = poset_from_cover(3, [(0, 1), (1, 2)])
    assert p.lt[0][2]
    assert not p.lt[2][0]


def test_cycle_rejected():
    with pytest.raises(CycleInRelation):
        poset_from_cover(2, [(0, 1), (1, 0)])
    with pytest.raises(CycleInRelation):
        poset_from_cover(1, [(0, 0)])


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        poset_from_cover(2, [(0, 2)])


def test_empty_poset_rejected():
    with pytest.raises(ValueError):
        poset_from_cover(0, [])


def test_standard_example_relation():
    p = standard_example(3)
    for i in range(3):
        for j in range(3):
            assert p.less(i, 3 + j) == (i != j)


def test_cover_digraph_examples():
    assert set(cover_digraph(chain(3)).arcs) == {(0, 1), (1, 2)}
    assert not cover_digraph(antichain(3)).arcs
    assert set(cover_digraph(standard_example(3)).arcs) == {(i, 3 + j) for i in range(3) for j in range(3) if i != j}


def test_order_queries():
    q = order_queries(chain(3), [1])
    assert q["upset"] == {1, 2} and q["downset"] == {0, 1}
    assert order_queries(standard_example(3), [0])["upset"] == {0, 4, 5}
    q = order_queries(standard_example(3), [])
    assert q["upset"] == set() and q["downset"] == set()


def test_heights():
    assert chain(4).height_of(3) == 4
    s = standard_example(5)
    assert all(s.height_of(5 + j) == 2 for j in range(5))
    assert boolean_lattice(3).height_of(7) == 4
    p = poset_from_cover(3, [(0, 1)])
    assert p.height_of(0) == 1 and p.height_of(2) == 1


def test_longest_path_examples():
    assert longest_directed_path_len(chain(3), 0, 2) == 3
    assert longest_directed_path_len(standard_example(3), 0, 3) is None
    assert longest_directed_path_len(kelly(4), 0, 7) >= 3
    assert longest_directed_path_len(chain(3), 1, 1) == 1


def test_kk_examples():
    two_chains = poset_from_cover(4, [(0, 1), (2, 3)])
    assert not is_kk_free(two_chains, 2)[0]
    assert is_kk_free(chain(6), 2)[0] and is_kk_free(chain(6), 3)[0]
    free, (c1, c2) = is_kk_free(standard_example(2), 2)
    assert not free
    s2 = standard_example(2)
    assert s2.less(*c1) and s2.less(*c2)
    assert all(s2.incomparable(x, y) for x in c1 for y in c2)


def test_min_max_reduction_chain():
    q = min_max_reduction(chain(3))
    assert q.n == 5
    assert q.covers_down[1] == 1 << 0 | 1 << 3
    assert q.covers_up[1] == 1 << 2 | 1 << 4
    assert q.minimals_mask >> 3 & 1 and q.maximals_mask >> 4 & 1


def test_min_max_reduction_keeps_extreme_posets():
    assert min_max_reduction(standard_example(4)).n == 8


def test_components():
    assert sorted(map(sorted, connected_components_cover(standard_example(2)))) == [[0, 3], [1, 2]]
    assert len(connected_components_cover(standard_example(3))) == 1
    assert len(connected_components_cover(antichain(3))) == 3


def test_induced():
    q = induced(chain(3), [0, 2])
    assert q.less(0, 1) and q.cover_arcs() == [(0, 1)]
    s = induced(standard_example(3), [0, 1, 3, 4])
    assert s == standard_example(2)
    p = kelly(3)
    assert induced(p, range(p.n)) == p
    with pytest.raises(EmptySet):
        induced(p, [])


def test_text_round_trip():
    p = kelly(4)
    assert parse_poset(format_poset(p, "kelly 4")) == p


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poset("cover 0 1\n")
    with pytest.raises(ValueError):
        parse_poset("poset 2\nedge 0 1\n")


@settings(max_examples=150, deadline=None)
@given(posets(max_n=8))
def test_closure_and_reduction_round_trip(p):
    less = [[p.less(u, v) for v in range(p.n)] for u in range(p.n)]
    assert set(p.cover_arcs()) == oracles.covers(less)
    assert poset_from_cover(p.n, p.cover_arcs()) == p
    arcs = p.cover_arcs()
    for i in range(len(arcs)):
        assert poset_from_cover(p.n, arcs[:i] + arcs[i + 1:]) != p


@settings(max_examples=100, deadline=None)
@given(posets(max_n=8))
def test_closure_matches_oracle(p):
    # rebuild from an arbitrary relation: all comparabilities plus covers
    arcs = [(u, v) for u in range(p.n) for v in range(p.n) if p.less(u, v)]
    less = oracles.closure(p.n, arcs)
    assert [[p.less(u, v) for v in range(p.n)] for u in range(p.n)] == less


@settings(max_examples=120, deadline=None)
@given(posets(max_n=8))
def test_height_and_path_len_oracle(p):
    less = [[p.less(u, v) for v in range(p.n)] for u in range(p.n)]
    assert p.height == oracles.height(less)
    for a in range(p.n):
        for b in range(p.n):
            got = longest_directed_path_len(p, a, b)
            if a == b:
                assert got == 1
            elif not less[a][b]:
                assert got is None
            else:
                assert got == oracles.longest_cover_path(less, a, b)


@settings(max_examples=80, deadline=None)
@given(posets(max_n=8))
def test_kk_free_oracle(p):
    less = [[p.less(u, v) for v in range(p.n)] for u in range(p.n)]
    for k in (2, 3):
        free, witness = is_kk_free(p, k)
        assert free == oracles.kk_free(less, k)
        if not free:
            c1, c2 = witness
            assert len(c1) == len(c2) == k
            assert all(p.less(c[i], c[i + 1]) for c in (c1, c2) for i in range(k - 1))
            assert all(p.incomparable(x, y) for x in c1 for y in c2)


def test_min_max_reduction_properties():
    for seed in range(100):
        rng = random.Random(seed)
        p, _ = random_order(rng.randint(2, 9), rng.choice([0.2, 0.4, 0.6]), seed)
        q = min_max_reduction(p)
        assert q.height == p.height
        old = [(u, v) for u, v in q.cover_arcs() if u < p.n and v < p.n]
        assert sorted(old) == sorted(p.cover_arcs())
        for x in range(p.n, q.n):
            assert q.cover_adjacency[x].bit_count() == 1
        for u in range(p.n):
            for v in range(p.n):
                assert q.less(u, v) == p.less(u, v)
        for x in range(p.n):
            if p.up[x] and p.down[x]:
                assert q.down[x] & ~p.down[x] and q.up[x] & ~p.up[x]


def test_min_max_reduction_reaches_pairs_among_maxima():
    # every point is extreme, yet critical pairs (1, 4) and (0, 2) are not min-max pairs
    p = poset_from_cover(5, [(0, 1), (0, 4), (2, 4), (3, 4)])
    q = min_max_reduction(p)
    assert q.n == 8 and q.height == 2
    assert set(q.cover_arcs()) - set(p.cover_arcs()) == {(5, 1), (2, 6), (3, 7)}
