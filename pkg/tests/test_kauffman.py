import itertools
from collections import Counter
from fractions import Fraction

import pytest

from kfloer import exact_linalg as la
from kfloer.diagram import COLORINGS
from kfloer.kauffman import tree_of_state

from conftest import ALTERNATING, SMALL, definite_model, diagram, model


def brute_force_states(d):
    """Perfect matchings crossing -> corner of a distinct unmarked face."""
    marked = {d.root_black, d.root_white}
    out = set()
    for choice in itertools.product(range(4), repeat=d.n):
        faces = [d.corner_face[(c, k)] for c, k in enumerate(choice)]
        if marked.isdisjoint(faces) and len(set(faces)) == d.n:
            out.add(choice)
    return out


@pytest.mark.parametrize("name, count", [("fig4-unknot", 5), ("trefoil", 3), ("t35-e8", 61), ("10_153", 71)])
def test_state_counts(name, count):
    assert len(model(name).states) == count


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("conv", COLORINGS)
def test_states_are_exactly_the_corner_matchings(name, conv):
    m = model(name, conv)
    assert {x.assignment for x in m.states} == brute_force_states(m.d)


@pytest.mark.parametrize("name", SMALL + ["t35-e8", "9_47"])
def test_trees_partition_crossings_and_round_trip(name):
    m = model(name)
    for x in m.states:
        assert sorted(x.t_black + x.t_white) == list(range(m.n))
        assert tree_of_state(m.d, m.tp, x.assignment) == x.t_black
    assert len(m.states) == la.det(m.tp.black.laplacian_minor())


@pytest.mark.parametrize("name", SMALL + ["t35-e8", "10_153"])
def test_psi_classes(name):
    m = model(name)
    by_id = {x.sid: x for x in m.states}
    gens = {g.sid: g for g in m.generators}
    assert sum(len(pc.members) for pc in m.psi_classes) == len(m.states)
    for pc in m.psi_classes:
        assert len(pc.members) == 2 ** pc.cycles
        xs = [by_id[s] for s in pc.members]
        assert len({(x.v_white, x.v_black) for x in xs}) == 1
        assert len({gens[s].spinc for s in pc.members}) == 1
        assert len({gens[s].grading - gens[s].delta for s in pc.members}) == 1


@pytest.mark.parametrize("path", ALTERNATING, ids=lambda p: p.stem)
def test_alternating_states_are_solitary_with_zero_delta(path):
    m = definite_model(path)
    assert all(pc.solitary for pc in m.psi_classes)
    assert all(x.delta_white == 0 for x in m.states)
    assert sum(pc.solitary for pc in m.psi_classes) == m.determinant


def test_switched_trefoil_solitary_counts_depend_on_mark():
    one = model("switched-trefoil", mark_label=1)
    three = model("switched-trefoil", mark_label=4)
    assert sum(pc.solitary for pc in one.psi_classes) == 1
    assert sum(pc.solitary for pc in three.psi_classes) == 3


def test_trefoil_state_vectors():
    m = model("trefoil")
    assert Counter(abs(x.v_white[0]) for x in m.states) == Counter({1: 2, 3: 1})
    qs = Counter(la.quadratic(m.g_white_inv, x.v_white) for x in m.states)
    assert qs == Counter({Fraction(-1, 3): 2, Fraction(-3): 1})


@pytest.mark.parametrize("name", SMALL + ["t35-e8"])
def test_white_vectors_are_characteristic(name):
    m = model(name)
    for x in m.states:
        assert la.is_characteristic(m.g_white, x.v_white)
        assert la.is_characteristic([[-v for v in r] for r in m.g_black], x.v_black)


def test_fixture_lookup_is_shared():
    assert diagram("trefoil") is diagram("trefoil")
