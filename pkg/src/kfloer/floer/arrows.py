"""Candidate differentials: index-one non-negative domains, the E1 page and the delta-drop check."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from ..parallel import pmap
from .domains import FloerDomain, domain
from .gradings import GradedGenerator
from .ribbon import DomainShape, classify, face_coefficients, state_points


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    domain: FloerDomain
    delta_gap: int

    @property
    def max_coefficient(self) -> Fraction:
        return self.domain.max_coefficient

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "max_coefficient": str(self.max_coefficient),
            "delta_gap": self.delta_gap,
            "domain": self.domain.to_dict(),
        }


def by_spinc(gens) -> dict[int, list[GradedGenerator]]:
    out: dict = defaultdict(list)
    for g in gens:
        out[g.spinc].append(g)
    return dict(sorted(out.items()))


def arrows(model, gens=None) -> list[Arrow]:
    """Edges x -> y in one spin^c class with gr(x) - gr(y) = 1 and a non-negative domain."""
    gens = model.generators if gens is None else gens
    pairs = [
        (gx, gy)
        for cls in by_spinc(gens).values()
        for gx in cls
        for gy in cls
        if gx.grading - gy.grading == 1
    ]
    doms = pmap(lambda p: domain(model, p[0].state, p[1].state), pairs)
    return [Arrow(gx.sid, gy.sid, dom, gx.delta - gy.delta) for (gx, gy), dom in zip(pairs, doms) if dom.is_nonnegative]


def is_union_of_chains(arrs: list[Arrow]) -> bool:
    """Every generator has at most one outgoing and one incoming arrow (no cycles: gradings drop)."""
    outs = defaultdict(int)
    ins = defaultdict(int)
    for a in arrs:
        outs[a.source] += 1
        ins[a.target] += 1
    return all(v <= 1 for v in outs.values()) and all(v <= 1 for v in ins.values())


@dataclass(frozen=True)
class DeltaReport:
    violations: tuple[Arrow, ...]
    gaps: dict

    @property
    def consistent(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "gap_histogram": {str(k): v for k, v in sorted(self.gaps.items())},
            "violations": [{"source": a.source, "target": a.target, "delta_gap": a.delta_gap} for a in self.violations],
        }


def delta_conjecture_check(arrs: list[Arrow]) -> DeltaReport:
    """Arrows whose delta gap is not 1, i.e. candidate differentials that do not lower delta by one."""
    gaps: dict = defaultdict(int)
    for a in arrs:
        gaps[a.delta_gap] += 1
    return DeltaReport(tuple(a for a in arrs if a.delta_gap != 1), dict(gaps))


def e1_page(model, gens=None) -> dict[int, list[Fraction]]:
    """Per spin^c class, the sorted gradings of solitary generators."""
    gens = model.generators if gens is None else gens
    solitary = {sid for pc in model.psi_classes if pc.solitary for sid in pc.members}
    out: dict = {i: [] for i in range(len(model.spinc.classes))}
    for g in gens:
        if g.sid in solitary:
            out[g.spinc].append(g.grading)
    return {k: sorted(v) for k, v in out.items()}


def classify_domain(dom: FloerDomain, model) -> DomainShape:
    """Punctured-polygon and arborescence tests for a diagram domain on its ribbon graph."""
    d = model.d
    coeffs = face_coefficients(model, dom)
    xs = state_points(d, model.states[dom.source])
    ys = state_points(d, model.states[dom.target])
    return classify(model.ribbon, coeffs, xs, ys)
