from collections import Counter
from fractions import Fraction

import pytest

from kfloer import exact_linalg as la
from kfloer.diagram import COLORINGS
from kfloer.floer.arrows import by_spinc
from kfloer.floer.gradings import black_grading, white_grading

from conftest import ALTERNATING, SMALL, definite_model, model

EXTRA = ["trefoil-kink", "t35-e8", "9_47", "9_49", "10_153"]


def test_trefoil_gradings():
    m = model("trefoil")
    assert Counter(g.grading for g in m.generators) == Counter({Fraction(1, 6): 2, Fraction(-1, 2): 1})
    reps = sorted(g.state.v_white[0] % 6 for g in m.generators)
    assert reps == [1, 3, 5]
    assert len({g.spinc for g in m.generators}) == 3


@pytest.mark.parametrize("name", SMALL + EXTRA)
@pytest.mark.parametrize("conv", COLORINGS)
def test_black_and_white_gradings_agree(name, conv):
    m = model(name, conv)
    for x in m.states:
        w = white_grading(x, m.g_white, m.g_white_inv if m.g_white else [], m.sigma_white)
        b = black_grading(x, m.g_black, m.g_black_inv if m.g_black else [], m.sigma_black)
        assert w == b


@pytest.mark.parametrize("name", SMALL + EXTRA)
def test_gaps_within_a_class_are_integers(name):
    m = model(name)
    for gens in by_spinc(m.generators).values():
        assert len({g.grading % 1 for g in gens}) == 1


@pytest.mark.parametrize("path", ALTERNATING, ids=lambda p: p.stem)
def test_alternating_gradings(path):
    m = definite_model(path)
    gens = m.generators
    assert sorted(g.spinc for g in gens) == list(range(m.determinant))
    k = len(m.g_white)
    for g in gens:
        q = la.quadratic(m.g_white_inv, g.state.v_white) if k else 0
        assert g.grading == (q + k) / 4
    by = {g.spinc: g.grading for g in gens}
    for cls in m.spinc.classes:
        assert by[cls.index] == by[cls.conjugate]


def test_det_one_puts_every_state_in_one_class():
    m = model("10_153")
    assert {g.spinc for g in m.generators} == {0}


def test_e8_generators():
    gens = model("t35-e8").generators
    grades = [g.grading for g in gens]
    assert len(gens) == 61 and len(set(grades)) == 61
    assert min(grades) == -2 and grades.count(-2) == 1
    assert {g.spinc for g in gens} == {0}
