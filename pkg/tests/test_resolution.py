from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedkh.diagram import braid_closure, framed_unknot, torus_diagram
from framedkh.resolution import (
    EnhancedState,
    KauffmanState,
    Marker,
    StateTable,
    bigrading,
    enumerate_enhanced,
    enumerate_states,
    sign_vectors,
    smooth,
)


def test_hopf_circle_counts():
    hopf = torus_diagram(2)
    counts = [smooth(hopf, s).circle_count for s in enumerate_states(hopf)]
    assert counts == [2, 1, 1, 2]
    assert smooth(hopf, KauffmanState.parse("AB")).circle_count == 1


def test_crossingless_circle():
    cs = smooth(framed_unknot(0), KauffmanState(()))
    assert cs.circle_count == 1 and cs.circles == ((),)


def test_partial_state_rejected():
    with pytest.raises(ValueError):
        smooth(torus_diagram(2), KauffmanState.parse("A"))


def test_state_order():
    assert [str(s) for s in enumerate_states(torus_diagram(2))] == ["AA", "AB", "BA", "BB"]
    assert [str(s) for s in enumerate_states(framed_unknot(0))] == [""]
    assert sum(1 for _ in enumerate_states(torus_diagram(12))) == 4096


def test_state_index_round_trip():
    s = KauffmanState.parse("ABBA")
    assert KauffmanState.from_index(4, s.index) == s
    assert s.sigma == 0 and s.flip(0) == KauffmanState.parse("BBBA")
    assert s.markers[1] is Marker.B


def test_enhanced_counts():
    assert [(a, b) for _, a, b in enumerate_enhanced(framed_unknot(0))] == [(0, 2), (0, -2)]
    assert sum(1 for _ in enumerate_enhanced(torus_diagram(2))) == 12
    assert sum(1 for _ in enumerate_enhanced(torus_diagram(1))) == 6


def test_enhanced_order_plus_before_minus():
    first = [S.signs for S, _, _ in enumerate_enhanced(torus_diagram(2))][:4]
    assert first == [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert sign_vectors(2) == first


def test_bigrading_examples():
    s = KauffmanState.parse("AAA")
    assert bigrading(EnhancedState(s, (1, 1))) == (3, 7)
    assert bigrading(EnhancedState(KauffmanState.parse("AB"), (1, -1, 1, -1))) == (0, 0)
    assert bigrading(EnhancedState(KauffmanState.parse("AA"), (-1, -1))) == (2, -2)


def test_circle_ids_follow_smallest_arc():
    cs = StateTable(torus_diagram(3)).circle_system(0)
    mins = [min(c) for c in cs.circles]
    assert mins == sorted(mins)
    for (k, slot), cid in cs.circle_of_slot.items():
        assert torus_diagram(3).pd[k][slot] in cs.circles[cid]


braid_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6)


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_flip_changes_circle_count_by_one(word):
    d = braid_closure(word, 3)
    table = StateTable(d)
    n = d.n_crossings
    for idx in range(1 << n):
        for v in range(n):
            assert abs(int(table.counts[idx]) - int(table.counts[idx ^ (1 << (n - 1 - v))])) == 1


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_enhanced_total_and_parity(word):
    d = braid_closure(word, 3)
    table = StateTable(d)
    total = sum(2 ** int(c) for c in table.counts)
    seen = 0
    for S, a, b in enumerate_enhanced(d):
        seen += 1
        assert (b - a) // 2 % 2 == len(S.signs) % 2
        assert abs(S.tau) <= len(S.signs)
    assert seen == total


@settings(max_examples=30, deadline=None)
@given(braid_words, st.randoms())
def test_smoothing_independent_of_crossing_order(word, rnd):
    from framedkh.diagram import reorder
    d = braid_closure(word, 3)
    n = d.n_crossings
    order = list(range(n))
    rnd.shuffle(order)
    e = reorder(d, order)
    for idx in range(1 << n):
        s = KauffmanState.from_index(n, idx)
        s2 = KauffmanState(tuple(s.markers[k] for k in order))
        c1, c2 = smooth(d, s), smooth(e, s2)
        assert Counter(map(tuple, map(sorted, c1.circles))) == Counter(map(tuple, map(sorted, c2.circles)))
