import pytest

from kfloer.floer.arrows import arrows, by_spinc, delta_conjecture_check, e1_page, is_union_of_chains

from conftest import ALTERNATING, definite_model, model

NON_ALTERNATING = ["fig4-unknot", "switched-trefoil", "trefoil-kink", "9_47", "9_49", "10_153", "t35-e8"]


@pytest.fixture(scope="module")
def e8_arrows():
    return arrows(model("t35-e8"))


def test_e8_arrow_graph(e8_arrows):
    assert e8_arrows
    assert is_union_of_chains(e8_arrows)
    assert max(a.max_coefficient for a in e8_arrows) == 11
    rep = delta_conjecture_check(e8_arrows)
    assert set(rep.gaps) == {-1, 1}
    assert all(a.delta_gap == -1 for a in rep.violations)


def test_arrows_are_index_one_and_nonnegative(e8_arrows):
    gens = {g.sid: g for g in model("t35-e8").generators}
    for a in e8_arrows:
        assert gens[a.source].grading - gens[a.target].grading == 1
        assert a.domain.is_nonnegative and a.domain.is_integral
        assert gens[a.source].spinc == gens[a.target].spinc


@pytest.mark.parametrize("name", NON_ALTERNATING)
def test_same_psi_arrows_drop_delta_by_one(name):
    m = model(name)
    by = {x.sid: x for x in m.states}
    for a in arrows(m):
        if by[a.source].psi == by[a.target].psi:
            assert a.delta_gap == 1


@pytest.mark.parametrize("path", ALTERNATING[:12], ids=lambda p: p.stem)
def test_alternating_has_no_arrows_and_e1_is_one_per_class(path):
    m = definite_model(path)
    arrs = arrows(m)
    assert arrs == [] and delta_conjecture_check(arrs).consistent
    page = e1_page(m)
    assert all(len(v) == 1 for v in page.values())
    assert sum(map(len, page.values())) == m.determinant


@pytest.mark.parametrize("name", NON_ALTERNATING)
def test_e1_rank_bounds_determinant(name):
    m = model(name)
    page = e1_page(m)
    assert all(len(v) >= 1 for v in page.values())
    assert sum(map(len, page.values())) >= m.determinant
    # non-solitary states come in psi classes of even size
    for cls, gens in by_spinc(m.generators).items():
        assert (len(gens) - len(page[cls])) % 2 == 0


def test_switched_trefoil_favourable_mark_has_rank_one():
    assert sum(map(len, e1_page(model("switched-trefoil", mark_label=1)).values())) == 1
