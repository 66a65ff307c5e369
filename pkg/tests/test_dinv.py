import json
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfloer.cli import marking_sweep
from kfloer.errors import InconsistentHints, NotNegativeDefinite
from kfloer.floer.dinv import (
    DEFINITE,
    EULER,
    RESIDUE,
    SOLITARY,
    ClassEntry,
    HFReport,
    Hints,
    d_invariants_definite,
    deduce_corrections,
    euler_value,
    merge_reports,
    prefactor,
    render_report,
    report_json,
)

from conftest import ALTERNATING, definite_model, model


def test_trefoil_definite():
    rep = d_invariants_definite(model("trefoil"))
    assert Counter(rep.d_values()) == Counter({F(1, 6): 2, F(-1, 2): 1})
    assert all(e.provenance == DEFINITE for e in rep.entries)
    assert render_report(rep) == "1/6 · (−3 + x + x²)"
    assert render_report(rep, ascii_=True) == "1/6 · (-3 + x + x^2)"


def test_figure_eight_definite_is_conjugation_symmetric():
    m = definite_model(ALTERNATING[1])
    rep = d_invariants_definite(m)
    assert len(rep.entries) == 5
    by = {e.index: e.d for e in rep.entries}
    assert all(by[e.index] == by[e.conjugate] for e in rep.entries)


def test_definite_formula_needs_negative_definite():
    with pytest.raises(NotNegativeDefinite):
        d_invariants_definite(model("fig4-unknot"))


@pytest.mark.parametrize("path", ALTERNATING, ids=lambda p: p.stem)
def test_alternating_deduction_matches_definite(path):
    m = definite_model(path)
    ded = deduce_corrections(m)
    assert ded.complete
    assert ded.d_values() == d_invariants_definite(m).d_values()
    assert Counter(ded.d_values()) == Counter(ded.entries[e.conjugate].d for e in ded.entries)


def test_unknot_sweep_gives_zero():
    d = model("fig4-unknot").d
    assert deduce_corrections(model("fig4-unknot")).entries[0].d is None
    rep, labels = marking_sweep(d)
    assert rep.d_values() == [0] and len(labels) > 1
    hinted = deduce_corrections(model("fig4-unknot"), Hints(lspace=True))
    assert hinted.d_values() == [0] and hinted.entries[0].provenance == EULER


def test_switched_trefoil_solitary_rule():
    rep = deduce_corrections(model("switched-trefoil", mark_label=1))
    assert rep.d_values() == [0] and rep.entries[0].provenance == SOLITARY


def test_unknown_class_keeps_only_residue():
    rep = deduce_corrections(model("10_153"))
    (e,) = rep.entries
    assert e.d is None and e.residue == 0 and e.provenance == RESIDUE
    assert not rep.complete


def test_sweep_fills_the_spin_class():
    m = model("9_47")
    base = deduce_corrections(m, Hints(lspace=True))
    assert [e.index for e in base.entries if e.d is None] == [e.index for e in base.entries if e.conjugate == e.index]
    rep, _ = marking_sweep(m.d, Hints(lspace=True))
    assert rep.complete
    spin = next(e for e in rep.entries if e.conjugate == e.index)
    assert spin.d == F(-1, 2) and spin.monomial == (0, 0)


@pytest.mark.parametrize("ranks, value", [
    (((F(0), 3), (F(1), 2)), F(0)),
    (((F(-1), 2), (F(0), 3)), F(0)),
    (((F(-1, 2), 1),), F(-1, 2)),
    (((F(1, 2), 1), (F(3, 2), 2)), F(3, 2)),
])
def test_euler_rule(ranks, value):
    assert euler_value(ranks, True) == value
    assert euler_value(ranks, False) is None


def test_euler_rule_undetermined_and_inconsistent():
    assert euler_value(((F(-1), 1), (F(0), 1), (F(1), 1)), True) is None
    with pytest.raises(InconsistentHints):
        euler_value(((F(0), 1), (F(1), 1)), True)
    with pytest.raises(InconsistentHints):
        euler_value(((F(0), 2),), True)


def test_kinked_trefoil_matches_trefoil():
    rep = deduce_corrections(model("trefoil-kink"), Hints(lspace=True))
    assert Counter(rep.d_values()) == Counter({F(1, 6): 2, F(-1, 2): 1})


def test_lspace_hint_contradicted_by_e1():
    ranks = ((F(0), 1), (F(1), 1))
    with pytest.raises(InconsistentHints):
        euler_value(ranks, True)


def test_merge_rejects_disagreement():
    a = HFReport((3,), (ClassEntry(0, (0,), 0, F(1, 2), F(1, 2), SOLITARY),))
    b = HFReport((3,), (ClassEntry(0, (0,), 0, F(1, 2), F(3, 2), SOLITARY),))
    with pytest.raises(InconsistentHints):
        merge_reports([a, b])
    c = HFReport((3,), (ClassEntry(0, (0,), 0, F(1, 2)),))
    assert merge_reports([c, a]).d_values() == [F(1, 2)]


# --- rendering ---------------------------------------------------------------


def _cyclic(spin_hom, values, det):
    entries = [ClassEntry(0, (0,), 0, F(0), homology=spin_hom, d=spin_hom[0][0])]
    for j, v in enumerate(values, start=1):
        entries.append(ClassEntry(j, (j,), det - j, v % 1, v))
    return HFReport((det,), tuple(entries))


def test_render_underline_det_one():
    rep = HFReport((), (ClassEntry(0, (), 0, F(0), homology=((F(0), 3), (F(1), 2))),))
    assert render_report(rep) == "0̲³ + 1²"


def test_render_non_monic_spin_with_cyclic_group():
    vals = [F(c, 5) for c in (-1, 1, 1, -1)]
    rep = _cyclic(((F(-1), 2), (F(0), 1)), vals, 5)
    assert render_report(rep) == "1/5 · (−5̲² + 0 − x + x² + x³ − x⁴)"


def test_render_half_integral_prefactor():
    coeffs = (9, -19, -7, 1, 5, 5, 1, -7, -19, 9)
    rep = _cyclic(((F(-1, 2), 2), (F(1, 2), 1)), [F(c, 22) for c in coeffs], 11)
    assert prefactor(rep) == 22
    assert render_report(rep, ascii_=True) == (
        "1/22 · (-1̲1̲^2 + 11 + 9 x - 19 x^2 - 7 x^3 + x^4 + 5 x^5 + 5 x^6 + x^7 - 7 x^8 - 19 x^9 + 9 x^10)"
    )


def test_render_empty_and_unknown():
    assert render_report(HFReport((), ())) == ""
    assert json.loads(report_json(HFReport((), ())))["classes"] == []
    rep = HFReport((3,), (ClassEntry(0, (0,), 0, F(1, 2)), ClassEntry(1, (1,), 2, F(1, 6), F(1, 6))))
    assert render_report(rep) == "1/6 · (? + x)"


def test_report_json_carries_text():
    rep = d_invariants_definite(model("trefoil"))
    doc = json.loads(report_json(rep))
    assert doc["text"] == render_report(rep) and doc["complete"] and doc["labeling"] == "c1"


def test_even_order_labeling_is_flagged():
    rep = deduce_corrections(model("hopf"))
    assert rep.labeling == "spinc" and rep.factors == (2,)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=1, max_size=8), st.integers(2, 9))
def test_render_is_deterministic_and_scaled(nums, b):
    entries = tuple(ClassEntry(i, (i,), i, F(n, 2 * b) % 1, F(n, 2 * b)) for i, n in enumerate(nums))
    rep = HFReport((b,), entries)
    s = prefactor(rep)
    assert s in (b, 2 * b)
    assert all((e.d * s).denominator == 1 for e in entries)
    assert render_report(rep) == render_report(HFReport((b,), tuple(reversed(entries))))
