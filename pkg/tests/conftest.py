import functools
import itertools
from pathlib import Path

import pytest

from kfloer.diagram import COLORINGS, parse_diagram
from kfloer.floer.model import FloerModel
from kfloer.pdfile import read_pd_file

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
ALTERNATING = sorted((FIXTURES / "alternating").glob("*.pd"), key=lambda p: tuple(map(int, p.stem.split("_"))))

TREFOIL = "X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)"
TREFOIL_TABLE = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
KINK = "X(1,1,2,2)"
SWITCHED_TREFOIL = "X(1,4,2,5) X(6,4,1,3) X(2,6,3,5)"


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.pd"


@functools.lru_cache(maxsize=None)
def diagram(name: str, coloring=None, mark_label=None, mark_crossing=None):
    return read_pd_file(fixture_path(name)).diagram(mark_label, mark_crossing, coloring)


@functools.lru_cache(maxsize=None)
def model(name: str, coloring=None, mark_label=None, mark_crossing=None) -> FloerModel:
    return FloerModel(diagram(name, coloring, mark_label, mark_crossing))


@functools.lru_cache(maxsize=None)
def code_model(code: str, coloring="unbounded_white", mark_label=None) -> FloerModel:
    return FloerModel(parse_diagram(code, coloring=coloring, mark_label=mark_label))


@functools.lru_cache(maxsize=None)
def alternating_model(path: Path, coloring="unbounded_white") -> FloerModel:
    return FloerModel(read_pd_file(path).diagram(coloring=coloring))


def definite_model(path: Path) -> FloerModel:
    """The coloring of an alternating diagram in which every incidence number is +1."""
    for conv in COLORINGS:
        m = alternating_model(path, conv)
        if all(mu == 1 for mu in m.d.mu):
            return m
    raise AssertionError(f"{path.stem} is not alternating")


def alternating_meta(path: Path) -> dict:
    return read_pd_file(path).meta


# small diagrams (at most 6 crossings) used for all-pairs checks
SMALL = ["trefoil", "fig4-unknot", "switched-trefoil", "hopf", "4_1"] + [
    f"alternating/{p.stem}" for p in ALTERNATING if int(p.stem.split("_")[0]) <= 6
]


def small_models():
    for name in SMALL:
        for conv in COLORINGS:
            yield name, conv, model(name, conv)


def pairs(m):
    return itertools.product(m.states, m.states)


@pytest.fixture
def trefoil():
    return model("trefoil")
