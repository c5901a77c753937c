import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framedkh.bracket import bracket_state_sum
from framedkh.complex import build_complex, direct_sum
from framedkh.diagram import (
    LinkDiagram,
    apply_r1,
    braid_closure,
    framed_unknot,
    mirror,
    reorder,
    torus_diagram,
)
from framedkh.homology import (
    AbelianGroup,
    ChainComplexError,
    HomologyTable,
    classical_table,
    compute_homology,
    euler_polynomial,
    homology,
    tables_equal,
    tables_shifted,
)

Z, Z2 = AbelianGroup(1), AbelianGroup(0, (2,))
HOPF = {(2, 6): Z, (2, 2): Z, (-2, -2): Z, (-2, -6): Z}
TREFOIL = {(3, 7): Z, (3, 3): Z, (-1, -1): Z, (-3, -9): Z, (-3, -5): Z2}


def test_known_tables():
    assert homology(torus_diagram(2)).groups == HOPF
    assert homology(torus_diagram(3)).groups == TREFOIL
    assert homology(framed_unknot(0)).groups == {(0, 2): Z, (0, -2): Z}
    assert homology(LinkDiagram()).groups == {(0, 0): Z}


def test_abelian_group_text():
    g = AbelianGroup(2, (2, 4))
    assert str(g) == "Z^2+Z_2+Z_4"
    assert AbelianGroup.parse(str(g)) == g
    assert str(AbelianGroup()) == "0" and AbelianGroup.parse("0").is_trivial
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


def test_classical_trefoil():
    t = classical_table(homology(torus_diagram(3)), 3)
    assert t.groups == {(0, 1): Z, (0, 3): Z, (2, 5): Z, (3, 9): Z, (3, 7): Z2}
    assert t.to_records()[0].keys() == {"i", "j", "free_rank", "torsion"}


def test_classical_identity_at_zero_writhe():
    t = HomologyTable({(2, 4): Z, (-2, 0): Z2})
    assert classical_table(t, 0).groups == {(-1, -2): Z, (1, 0): Z2}


def test_classical_parity_violation():
    with pytest.raises(ValueError, match="parity"):
        classical_table(homology(torus_diagram(3)), 2)


def test_comparisons():
    t3 = homology(torus_diagram(3))
    assert not tables_equal(t3, homology(torus_diagram(2)))
    assert tables_shifted(homology(apply_r1(torus_diagram(3), 1, 1)), t3, 1, 3)


@pytest.mark.parametrize("base", [torus_diagram(2), torus_diagram(3), braid_closure([1, -2, 1, -2], 3),
                                  framed_unknot(0)])
@pytest.mark.parametrize("sign", [1, -1])
def test_r1_shift(base, sign):
    arc = base.arcs[0] if base.arcs else None
    kinked = apply_r1(base, arc, sign)
    assert tables_shifted(homology(kinked), homology(base), sign, 3 * sign)


def test_double_r1_shift():
    base = torus_diagram(2)
    twice = apply_r1(apply_r1(base, 1, 1), 1, 1)
    assert tables_shifted(homology(twice), homology(base), 2, 6)


@pytest.mark.parametrize("pair", [("r2_before.pd", "r2_after.pd"), ("r3_before.pd", "r3_after.pd")])
def test_r2_r3_fixture_pairs(load, pair):
    assert tables_equal(homology(load(pair[0])), homology(load(pair[1])))


def test_mirror_negates_gradings():
    t = homology(torus_diagram(2))
    m = homology(mirror(torus_diagram(2)))
    assert {(-a, -b) for a, b in t.groups} == set(m.groups)


def test_reversed_crossing_order():
    d = torus_diagram(5)
    assert tables_equal(homology(d), homology(reorder(d, list(range(4, -1, -1)))))


def test_formats():
    t = homology(framed_unknot(0))
    assert t.to_json() == '[{"a":0,"b":2,"free_rank":1,"torsion":[]},{"a":0,"b":-2,"free_rank":1,"torsion":[]}]'
    assert HomologyTable.from_records(json.loads(t.to_json())).groups == t.groups
    t3 = homology(torus_diagram(3))
    assert "-3,-5,0,2" in t3.to_csv().splitlines()
    assert t3.to_csv().splitlines()[0] == "a,b,free_rank,torsion"
    rows = t3.render().splitlines()
    assert rows[0].split("||")[1].split("|")[0].strip() == "-3"
    assert [r.split("||")[0].strip() for r in rows[2:]] == ["7", "3", "-1", "-5", "-9"]


def test_trivial_groups_not_stored():
    t = HomologyTable({(0, 0): AbelianGroup(), (2, 2): Z})
    assert list(t.groups) == [(2, 2)] and t[0, 0].is_trivial


def test_direct_sum_of_complexes():
    c1, c2 = build_complex(torus_diagram(3)), build_complex(braid_closure([1, -2, 1, -2], 3))
    h1, h2 = compute_homology(c1), compute_homology(c2)
    h = compute_homology(direct_sum(c1, c2))
    for g in set(h1.groups) | set(h2.groups):
        a, b = h1[g], h2[g]
        assert h[g] == AbelianGroup(a.free_rank + b.free_rank, tuple(sorted(a.torsion + b.torsion)))


def test_disjoint_union_is_tensor_product_over_q():
    # a separate circle tensors with Z at (0, +-2); free ranks add up accordingly
    t = homology(torus_diagram(2))
    u = homology(LinkDiagram(torus_diagram(2).crossings, 1))
    expect = {}
    for (a, b), g in t.groups.items():
        for db in (2, -2):
            expect[a, b + db] = expect.get((a, b + db), 0) + g.free_rank
    assert {k: g.free_rank for k, g in u.groups.items()} == expect


def test_broken_complex_rejected():
    c = build_complex(torus_diagram(3))
    m = c.differentials[-1, -1]
    i, j, x = next(iter(m.triplets()))
    c.differentials[-1, -1] = m.with_entry(i, j, -x)
    with pytest.raises(ChainComplexError):
        compute_homology(c)


def test_parallel_matches_serial():
    c = build_complex(torus_diagram(6))
    assert tables_equal(compute_homology(c, workers=2), compute_homology(c, workers=1))


braid_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=7)


@settings(max_examples=40, deadline=None)
@given(braid_words)
def test_euler_characteristic(word):
    d = braid_closure(word, 3)
    assert euler_polynomial(homology(d)) == bracket_state_sum(d)


@settings(max_examples=25, deadline=None)
@given(braid_words.filter(lambda w: len(w) >= 2), st.randoms(use_true_random=False))
def test_crossing_order_independence(word, rnd):
    d = braid_closure(word, 3)
    order = list(range(d.n_crossings))
    rnd.shuffle(order)
    assert tables_equal(homology(d), homology(reorder(d, order)))


@settings(max_examples=25, deadline=None)
@given(braid_words.filter(bool))
def test_support_parity(word):
    d = braid_closure(word, 3)
    for a, b in homology(d).groups:
        assert (a - d.n_crossings) % 2 == 0 and (b - a) % 2 == 0
