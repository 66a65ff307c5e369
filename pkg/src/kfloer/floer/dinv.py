"""Correction terms: the definite formula, the deduction rules, and report rendering."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .. import exact_linalg as la
from ..errors import ConventionError, InconsistentHints, NotNegativeDefinite
from ..parallel import pmap
from .arrows import by_spinc, e1_page

DEFINITE = "definite"
SOLITARY = "solitary"
EULER = "euler"
CONJUGATION = "conjugation"
RESIDUE = "residue"


@dataclass(frozen=True)
class ClassEntry:
    index: int
    monomial: tuple[int, ...]  # exponents of x (and y)
    conjugate: int
    residue: Fraction  # d mod 1
    d: Fraction | None = None
    provenance: str = RESIDUE
    e1_ranks: tuple[tuple[Fraction, int], ...] = ()  # (grading, number of solitary generators)
    homology: tuple[tuple[Fraction, int], ...] = ()  # known graded ranks, only when supplied

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "monomial": list(self.monomial),
            "conjugate": self.conjugate,
            "d": None if self.d is None else str(self.d),
            "provenance": self.provenance,
            "residue": str(self.residue),
            "e1_ranks": {str(g): k for g, k in self.e1_ranks},
            "homology": {str(g): k for g, k in self.homology},
        }


@dataclass(frozen=True)
class HFReport:
    factors: tuple[int, ...]  # nontrivial invariant factors of H_1, ascending
    entries: tuple[ClassEntry, ...]
    labeling: str = "c1"  # "c1" (first Chern class) or "spinc" for even orders
    notes: tuple[str, ...] = field(default=())

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f
        return out

    @property
    def complete(self) -> bool:
        return all(e.d is not None for e in self.entries)

    def d_values(self) -> list[Fraction | None]:
        return [e.d for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "factors": list(self.factors),
            "labeling": self.labeling,
            "complete": self.complete,
            "classes": [e.to_dict() for e in self.entries],
            "notes": list(self.notes),
            "text": render_report(self),
        }


@dataclass
class Hints:
    """Facts imported from outside the model: global or per-class L-space hints."""

    lspace: bool = False
    lspace_classes: frozenset = frozenset()

    def is_lspace(self, cls: int) -> bool:
        return self.lspace or cls in self.lspace_classes


# --- class labels -------------------------------------------------------------


def monomials(model) -> tuple[tuple[int, ...], list[tuple[int, ...]], str]:
    """Invariant factors and per-class exponents.

    For odd order the exponents are the Smith coordinates of c_1 = [v] in
    coker G_W (a spin^c structure is determined by c_1).  For even order c_1
    does not separate classes, so the spin^c key itself is used.
    """
    sp = model.spinc
    snf = sp.snf
    keep = [i for i, f in enumerate(snf.factors) if f != 1]
    factors = tuple(snf.factors[i] for i in keep)
    order = 1
    for f in factors:
        order *= f
    out = []
    for cls in sp.classes:
        if order % 2:
            uv = la.matvec(snf.U, cls.rep)
            out.append(tuple(int(uv[i]) % snf.factors[i] for i in keep))
        else:
            out.append(tuple(cls.key[i] for i in keep))
    return factors, out, "c1" if order % 2 else "spinc"


def _base_entries(model, gens) -> list[ClassEntry]:
    factors, monos, _ = monomials(model)
    e1 = e1_page(model, gens)
    groups = by_spinc(gens)
    out = []
    for cls in model.spinc.classes:
        gs = groups.get(cls.index, [])
        residue = gs[0].grading % 1 if gs else Fraction(0)
        ranks = tuple(sorted(Counter(e1[cls.index]).items()))
        out.append(ClassEntry(cls.index, monos[cls.index], cls.conjugate, residue, e1_ranks=ranks))
    return out


# --- definite formula -----------------------------------------------------------


def is_negative_definite(g) -> bool:
    return not g or la.signature(g) == -len(g)


def d_invariants_definite(model) -> HFReport:
    """d(t) = (max q over the orbit + m)/4 for a negative-definite white Goeritz matrix.

    On diagrams with every crossing of incidence +1 the maximum is also taken
    over the Kauffman vectors of the class, and the two must agree exactly.
    """
    g = model.g_white
    if not is_negative_definite(g):
        raise NotNegativeDefinite("white Goeritz matrix is not negative definite")
    m = len(g)
    entries = _base_entries(model, model.generators)
    best: dict = {}
    if all(mu == 1 for mu in model.d.mu):
        for gen in model.generators:
            q = la.quadratic(model.g_white_inv, gen.state.v_white) if m else Fraction(0)
            best[gen.spinc] = max(best.get(gen.spinc, q), q)
    maxima = pmap(lambda cls: la.max_q_over_orbit(g, cls.rep)[0], model.spinc.classes)
    out = []
    for cls, e, q in zip(model.spinc.classes, entries, maxima):
        if cls.index in best and best[cls.index] != q:
            raise ConventionError(f"class {cls.index}: orbit maximum {q} differs from state maximum {best[cls.index]}")
        dv = Fraction(q + m, 4)
        out.append(replace(e, d=dv, provenance=DEFINITE))
    factors, _, labeling = monomials(model)
    return HFReport(factors, tuple(out), labeling)


# --- deduction -------------------------------------------------------------------


def euler_value(ranks, lspace: bool) -> Fraction | None:
    """With an L-space hint, the grading carrying the homology if the Euler characteristic pins it."""
    if not lspace or not ranks:
        return None
    g0 = ranks[0][0]
    chi = sum(k * (-1) ** int(g - g0) for g, k in ranks)
    if abs(chi) != 1:
        raise InconsistentHints(f"L-space hint contradicts Euler characteristic {chi}")
    parity = 0 if chi == 1 else 1
    cands = [g for g, k in ranks if int(g - g0) % 2 == parity]
    return cands[0] if len(cands) == 1 else None


def deduce_corrections(model, hints: Hints | None = None, gens=None) -> HFReport:
    """Apply definite, solitary, Euler, conjugation and residue rules, in that order, to a fixed point."""
    hints = hints or Hints()
    gens = model.generators if gens is None else gens
    entries = _base_entries(model, gens)
    known: dict[int, tuple[Fraction, str]] = {}
    if all(mu == 1 for mu in model.d.mu):
        for e in d_invariants_definite(model).entries:
            known[e.index] = (e.d, DEFINITE)
    for e in entries:
        sol = e.e1_ranks[0][0] if len(e.e1_ranks) == 1 and e.e1_ranks[0][1] == 1 else None
        eul = euler_value(e.e1_ranks, hints.is_lspace(e.index))
        if sol is not None and eul is not None and sol != eul:
            raise InconsistentHints(f"class {e.index}: solitary rule gives {sol}, Euler rule {eul}")
        found = [(v, p) for v, p in ((sol, SOLITARY), (eul, EULER)) if v is not None]
        if e.index in known:
            if any(v != known[e.index][0] for v, _ in found):
                raise InconsistentHints(f"class {e.index}: deduced value disagrees with the definite formula")
        elif found:
            known[e.index] = found[0]
    changed = True
    while changed:
        changed = False
        for e in entries:
            if e.index not in known and e.conjugate in known:
                known[e.index] = (known[e.conjugate][0], CONJUGATION)
                changed = True
    for e in entries:
        if e.index in known and e.conjugate in known and known[e.index][0] != known[e.conjugate][0]:
            raise InconsistentHints(f"classes {e.index} and {e.conjugate} are conjugate but get different values")
    out = []
    for e in entries:
        if e.index in known:
            v, p = known[e.index]
            if v % 1 != e.residue:
                raise ConventionError(f"class {e.index}: value {v} has the wrong mod-1 residue")
            out.append(replace(e, d=v, provenance=p))
        else:
            out.append(e)
    factors, _, labeling = monomials(model)
    return HFReport(factors, tuple(out), labeling)


def merge_reports(reports: list[HFReport]) -> HFReport:
    """Combine runs that share spin^c labels (same white graph), checking agreement."""
    if not reports:
        return HFReport((), ())
    base = list(reports[0].entries)
    for r in reports[1:]:
        for i, e in enumerate(r.entries):
            b = base[i]
            if e.d is None:
                continue
            if b.d is None:
                base[i] = replace(b, d=e.d, provenance=e.provenance)
            elif b.d != e.d:
                raise InconsistentHints(f"class {i}: markings disagree ({b.d} vs {e.d})")
    return replace(reports[0], entries=tuple(base))


# --- rendering ---------------------------------------------------------------------

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_MINUS = "−"


def _sup(k: int, ascii_: bool) -> str:
    return f"^{k}" if ascii_ else str(k).translate(_SUP)


def _mono(exps: tuple[int, ...], ascii_: bool) -> str:
    parts = []
    for name, k in zip("xy", exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(name + _sup(k, ascii_))
    return " ".join(parts) if ascii_ else "".join(parts)


def _underline(s: str) -> str:
    return "".join(ch + "̲" if ch.isdigit() else ch for ch in s)


def prefactor(report: HFReport) -> int:
    """b or 2b, b the largest invariant factor: the least that clears every known value."""
    if not report.factors:
        return 1
    b = report.factors[-1]
    vals = [e.d for e in report.entries if e.d is not None]
    vals += [g for e in report.entries for g, _ in e.homology]
    return b if all((v * b).denominator == 1 for v in vals) else 2 * b


def _terms(e: ClassEntry, scale: int, ascii_: bool) -> list[tuple[int, str]]:
    """Signed terms (sign, body) for one class."""
    mono = _mono(e.monomial, ascii_)
    sep = " " if ascii_ and mono else ""
    if e.homology and sum(k for _, k in e.homology) > 1:
        top = max(e.homology, key=lambda t: (t[1], -t[0]))
        out = []
        for g, k in sorted(e.homology, key=lambda t: t[0] != top[0]):
            c = g * scale
            body = str(abs(c))
            if g == top[0]:
                body = _underline(body)
            if k > 1:
                body += _sup(k, ascii_)
            out.append((-1 if c < 0 else 1, body + (sep + mono if mono else "")))
        return out
    if e.d is None:
        return [(1, "?" + sep + mono)]
    c = e.d * scale
    if c == 0 and mono:
        return []
    if mono and abs(c) == 1:
        return [(-1 if c < 0 else 1, mono)]
    return [(-1 if c < 0 else 1, str(abs(c)) + (sep + mono if mono else ""))]


def render_report(report: HFReport, ascii_: bool = False) -> str:
    """Polynomial notation: sum of (scaled) d values times class monomials, constant first."""
    if not report.entries:
        return ""
    scale = prefactor(report)
    minus = "-" if ascii_ else _MINUS
    ordered = sorted(report.entries, key=lambda e: tuple(reversed(e.monomial)))
    terms = [t for e in ordered for t in _terms(e, scale, ascii_)]
    if not terms:
        terms = [(1, "0")]
    text = ""
    for i, (s, body) in enumerate(terms):
        if i == 0:
            text = (minus if s < 0 else "") + body
        else:
            text += f" {minus if s < 0 else '+'} {body}"
    if scale == 1:
        return text
    return f"1/{scale} · ({text})"


def report_json(report: HFReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True)
