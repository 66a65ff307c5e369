"""Absolute gradings and spin^c classes of Kauffman generators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import exact_linalg as la
from ..errors import ConventionError
from ..kauffman import KauffmanState


@dataclass(frozen=True)
class GradedGenerator:
    state: KauffmanState
    grading: Fraction
    spinc: int  # index into the model's spin^c classes

    @property
    def sid(self) -> int:
        return self.state.sid

    @property
    def delta(self) -> int:
        return self.state.delta_white

    def to_dict(self) -> dict:
        out = self.state.to_dict()
        out.update({"grading": str(self.grading), "spinc": self.spinc})
        return out


def white_grading(x: KauffmanState, g: list, g_inv: list, sigma: int) -> Fraction:
    """delta_W + (q(v_W) - 2m - 3 sigma(G_W)) / 4 with q(v) = v^T G_W^{-1} v."""
    m = len(g)
    q = la.quadratic(g_inv, x.v_white) if m else 0
    return x.delta_white + Fraction(q - 2 * m - 3 * sigma, 4)


def black_grading(x: KauffmanState, g: list, g_inv: list, sigma: int) -> Fraction:
    """The same formula read on the black graph, whose role is played by -G_B."""
    m = len(g)
    q = -la.quadratic(g_inv, x.v_black) if m else 0
    return x.delta_black + Fraction(q - 2 * m + 3 * sigma, 4)


def grading(x: KauffmanState, model) -> Fraction:
    gw = white_grading(x, model.g_white, model.g_white_inv if model.g_white else [], model.sigma_white)
    gb = black_grading(x, model.g_black, model.g_black_inv if model.g_black else [], model.sigma_black)
    if gw != gb:
        raise ConventionError(f"white grading {gw} and black grading {gb} disagree on state {x.sid}")
    return gw


def spinc_of_state(x: KauffmanState, model) -> la.SpincClass:
    return model.spinc.classify(x.v_white)


def graded_generators(model) -> list[GradedGenerator]:
    return [GradedGenerator(x, grading(x, model), spinc_of_state(x, model).index) for x in model.states]
