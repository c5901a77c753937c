import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


from framedkh.diagram import (
    DiagramError,
    LinkDiagram,
    PDSyntaxError,
    apply_r1,
    braid_closure,
    canonical_form,
    emit_orientation,
    emit_pd,
    framed_unknot,
    mirror,
    orient,
    parse_orientation,
    parse_pd,
    reorder,
    smooth_crossing,
    torus_diagram,
    writhe,
)
from framedkh.diagram import _components


def all_writhes(d):
    """Writhe under every relative orientation of the components."""
    k = len(_components(d))
    return {writhe(orient(d, reverse=[i for i in range(k) if mask >> i & 1])) for mask in range(1 << k)}


def test_parse_two_crossings():
    d = parse_pd("X 1 2 3 4\nX 3 4 1 2\n")
    assert d.n_crossings == 2 and d.arcs == (1, 2, 3, 4)
    assert d.pd == ((1, 2, 3, 4), (3, 4, 1, 2))


def test_parse_free_loop_and_comments():
    d = parse_pd("# just a circle\n\nL 1\n")
    assert d.n_crossings == 0 and d.free_loops == 1


def test_parse_kink_with_repeated_arcs():
    d = parse_pd("X 1 1 2 2")
    assert d.n_crossings == 1 and d.arcs == (1, 2)


def test_parse_accepts_global_count_of_two():
    d = parse_pd("X 1 2 3 4\nX 3 2 1 4")
    assert d.n_crossings == 2


@pytest.mark.parametrize("text, line, column", [
    ("X 1 2 3", 1, 8),
    ("X 1 2 3 4\nX 3 4 1 q", 2, 9),
    ("X 1 2 3 4\nY 1", 2, 1),
    ("X 0 1 1 0", 1, 3),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(PDSyntaxError) as err:
        parse_pd(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_arc_incidence_enforced():
    with pytest.raises(DiagramError, match="exactly twice"):
        parse_pd("X 1 2 3 4\nX 1 2 3 5")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_torus_diagram_shape(n):
    d = torus_diagram(n)
    assert d.n_crossings == n
    if n >= 2:
        assert len(d.arcs) == 2 * n
    assert n in all_writhes(d)


def test_torus_diagram_rejects_zero():
    with pytest.raises(DiagramError):
        torus_diagram(0)


def test_framed_unknot():
    assert framed_unknot(0) == LinkDiagram((), 1)
    assert framed_unknot(-2).n_crossings == 2
    assert writhe(orient(framed_unknot(-2))) == -2
    assert writhe(orient(framed_unknot(3))) == 3
    assert canonical_form(framed_unknot(1)) == canonical_form(torus_diagram(1))


def test_mirror_flips_writhe():
    assert all_writhes(mirror(torus_diagram(2))) == {2, -2}
    assert writhe(orient(mirror(torus_diagram(3)))) == -3
    assert mirror(mirror(mirror(mirror(torus_diagram(3))))) == torus_diagram(3)


def test_writhe_independent_of_global_orientation():
    d = torus_diagram(3)
    assert writhe(orient(d)) == writhe(orient(d, reverse=[0]))


def test_hopf_linking_sign_flips_with_one_component():
    d = torus_diagram(2)
    assert writhe(orient(d, reverse=[1])) == -writhe(orient(d))
    assert abs(writhe(orient(d))) == 2


def test_orientation_round_trip():
    d = torus_diagram(3)
    od = orient(d)
    assert parse_orientation(emit_orientation(od), d) == od


def test_inconsistent_orientation_rejected():
    d = torus_diagram(3)
    dirs = dict(orient(d).arc_directions)
    dirs[1] = -dirs[1]
    text = "".join(f"O {a} {'+' if s > 0 else '-'}\n" for a, s in dirs.items())
    with pytest.raises(DiagramError, match="inconsistent"):
        parse_orientation(text, d)


def test_apply_r1_on_free_loop():
    d = apply_r1(framed_unknot(0), None, 1)
    assert canonical_form(d) == canonical_form(framed_unknot(1))


def test_apply_r1_appends_crossing():
    d = torus_diagram(3)
    e = apply_r1(d, 2, -1)
    assert e.n_crossings == 4 and e.pd[:3] != () and writhe(orient(e)) == 2
    with pytest.raises(DiagramError):
        apply_r1(d, 99, 1)
    with pytest.raises(DiagramError):
        apply_r1(d, 1, 0)


def test_smooth_crossing_of_torus_link():
    d = torus_diagram(3)
    d_a, _ = smooth_crossing(d, 0, "A")
    d_b, _ = smooth_crossing(d, 0, "B")
    assert canonical_form(d_a) == canonical_form(torus_diagram(2))
    assert d_b.n_crossings == 2 and writhe(orient(d_b)) == -2
    with pytest.raises(DiagramError):
        smooth_crossing(d, 0, "C")
    with pytest.raises(DiagramError):
        smooth_crossing(d, 5, "A")


def test_smoothing_a_kink_leaves_free_loops():
    d_a, amap = smooth_crossing(torus_diagram(1), 0, "A")
    assert d_a == LinkDiagram((), 2)
    assert sorted(set(amap.values())) == [-2, -1]


def test_reorder_validates_permutation():
    d = torus_diagram(3)
    assert reorder(d, [2, 0, 1]).pd == (d.pd[2], d.pd[0], d.pd[1])
    with pytest.raises(DiagramError):
        reorder(d, [0, 0, 1])


def test_braid_closure_checks_generators():
    with pytest.raises(DiagramError):
        braid_closure([3], 3)
    assert braid_closure([], 2) == LinkDiagram((), 2)


braid_words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(braid_words)
def test_pd_round_trip(word):
    d = braid_closure(word, 3)
    assert parse_pd(emit_pd(d)) == d


@settings(max_examples=60, deadline=None)
@given(braid_words)
def test_braid_closure_writhe_is_exponent_sum(word):
    d = braid_closure(word, 3)
    if d.n_crossings:
        assert sum(1 if g > 0 else -1 for g in word) in all_writhes(d)
