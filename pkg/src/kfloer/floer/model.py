"""The diagram-to-states pipeline with its matrices computed once."""

from __future__ import annotations

from functools import cached_property

from .. import exact_linalg as la
from ..diagram import PlanarDiagram
from ..kauffman import KauffmanState, enumerate_states, psi_partition
from ..tait import build_tait_pair, coloring_matrix


class FloerModel:
    """Everything derived from one marked, colored diagram."""

    def __init__(self, d: PlanarDiagram):
        self.d = d
        self.tp = build_tait_pair(d)

    @property
    def n(self) -> int:
        return self.d.n

    @cached_property
    def g_white(self) -> list:
        return self.tp.white.goeritz()

    @cached_property
    def g_black(self) -> list:
        return self.tp.black.goeritz()

    @cached_property
    def coloring_matrix(self) -> list:
        return coloring_matrix(self.d)

    @cached_property
    def determinant(self) -> int:
        return abs(la.det(self.g_black))

    @cached_property
    def g_white_inv(self) -> list:
        return la.invert(self.g_white)

    @cached_property
    def g_black_inv(self) -> list:
        return la.invert(self.g_black)

    @cached_property
    def coloring_inv(self) -> list:
        return la.invert(self.coloring_matrix)

    @cached_property
    def sigma_white(self) -> int:
        return la.signature(self.g_white) if self.g_white else 0

    @cached_property
    def sigma_black(self) -> int:
        return la.signature(self.g_black) if self.g_black else 0

    @cached_property
    def spinc(self) -> la.SpincStructures:
        return la.SpincStructures(self.g_white)

    @cached_property
    def states(self) -> list[KauffmanState]:
        return enumerate_states(self.d, self.tp)

    @cached_property
    def psi_classes(self):
        return psi_partition(self.d, self.states)

    @cached_property
    def generators(self):
        from .gradings import graded_generators

        return graded_generators(self)

    @cached_property
    def ribbon(self):
        from .ribbon import ribbon_graph

        return ribbon_graph(self.d)

    @cached_property
    def face_regions(self):
        from .ribbon import face_regions

        return face_regions(self.d, self.ribbon)
