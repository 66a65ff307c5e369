import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfloer.diagram import (
    BLACK,
    COLORINGS,
    UNBOUNDED_BLACK,
    UNBOUNDED_WHITE,
    WHITE,
    checkerboard_color,
    crossing_attributes,
    from_dict,
    mirror,
    parse_diagram,
    pd_text,
    reorient,
    with_marks,
    writhe,
)
from kfloer.errors import Disconnected, MalformedCode
from kfloer.tait import build_tait_pair, classical_invariants

from conftest import ALTERNATING, KINK, SMALL, TREFOIL, TREFOIL_TABLE, diagram
from kfloer.pdfile import read_pd_file

ALL_NAMES = ["trefoil", "fig4-unknot", "switched-trefoil", "trefoil-kink", "hopf", "t35-e8", "4_1", "9_47", "9_49", "10_153"]


def test_table_trefoil_faces():
    d = parse_diagram(TREFOIL_TABLE)
    assert (d.n, len(d.faces), len(d.components)) == (3, 5, 1)


def test_kink_is_minimal_diagram():
    d = parse_diagram(KINK)
    assert (d.n, len(d.faces)) == (1, 3)


@pytest.mark.parametrize("code", ["X(1,1,1,2)", "X(1,2,3)", "X(1,2,3,4)", ""])
def test_malformed_codes(code):
    with pytest.raises(MalformedCode):
        parse_diagram(code)


def test_disconnected_code():
    with pytest.raises(Disconnected):
        parse_diagram("X(1,1,2,2) X(3,3,4,4)")


@pytest.mark.parametrize("name", ALL_NAMES)
@pytest.mark.parametrize("conv", COLORINGS)
def test_structural_invariants(name, conv):
    d = diagram(name, conv)
    assert len(d.faces) == d.n + 2
    assert len(d.arcs) == d.n
    for lab in d.labels:
        assert d.coloring[d.left_face(lab)] != d.coloring[d.right_face(lab)]
    assert {d.coloring[d.root_black], d.coloring[d.root_white]} == {BLACK, WHITE}
    assert sum(1 for f in d.faces if f.fid == d.unbounded_face) == 1
    want = WHITE if conv == UNBOUNDED_WHITE else BLACK
    assert d.coloring[d.unbounded_face] == want


def test_trefoil_coloring():
    d = parse_diagram(TREFOIL)
    whites = d.faces_of(WHITE)
    assert len(whites) == 2 and d.unbounded_face in whites
    assert sorted(len(d.faces[f]) for f in d.faces_of(BLACK)) == [2, 2, 2]
    assert d.mu == (1, 1, 1)
    assert mirror(d).mu == (-1, -1, -1)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_coloring_swap_negates_mu(name):
    d = diagram(name, UNBOUNDED_WHITE)
    s = checkerboard_color(d, UNBOUNDED_BLACK)
    assert s.mu == tuple(-m for m in d.mu)
    assert all(a != b for a, b in zip(d.coloring, s.coloring))
    assert [a.sign for a in crossing_attributes(d)] == [a.sign for a in crossing_attributes(s)]


def test_fig4_white_graph_has_three_vertices():
    d = diagram("fig4-unknot")
    assert len(d.faces_of(WHITE)) == 3


def test_right_trefoil_signature():
    d = parse_diagram(TREFOIL)
    assert writhe(d) == 3
    assert classical_invariants(build_tait_pair(d), d).gl_signature == -2


@pytest.mark.parametrize("path", ALTERNATING, ids=lambda p: p.stem)
def test_signature_invariant_under_reversal_of_knot(path):
    d = read_pd_file(path).diagram()
    r = reorient(d, [0])
    sig = classical_invariants(build_tait_pair(d), d).gl_signature
    assert classical_invariants(build_tait_pair(r), r).gl_signature == sig
    assert writhe(r) == writhe(d)


def test_crossing_type_invariant_under_global_reversal_of_link():
    d = diagram("hopf")
    r = reorient(d, range(len(d.components)))
    assert [a.crossing_type for a in crossing_attributes(d)] == [a.crossing_type for a in crossing_attributes(r)]
    assert [a.sign for a in crossing_attributes(d)] == [a.sign for a in crossing_attributes(r)]


@pytest.mark.parametrize("name", SMALL)
def test_json_round_trip(name):
    d = diagram(name)
    assert from_dict(d.to_dict()) == d
    assert parse_diagram(pd_text(d), mark_label=d.marked_label, mark_crossing=d.marked_crossing,
                         coloring=d.convention) == d


def test_from_dict_rejects_tampered_fields():
    doc = parse_diagram(TREFOIL).to_dict()
    doc["mu"] = [-1, -1, -1]
    with pytest.raises(MalformedCode):
        from_dict(doc)


def test_with_marks_validation():
    d = parse_diagram(TREFOIL)
    with pytest.raises(MalformedCode):
        with_marks(d, 99)
    with pytest.raises(MalformedCode):
        with_marks(d, None, 7)
    assert with_marks(d, 3).marked_label == 3


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_marked_arc_borders_one_face_of_each_color(name, data):
    d = diagram(name)
    lab = data.draw(st.sampled_from(d.labels))
    dm = with_marks(d, lab)
    assert lab in d.faces[dm.root_black].labels
    assert lab in d.faces[dm.root_white].labels
