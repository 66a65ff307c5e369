"""Domains connecting pairs of Kauffman generators.

Arc regions sit on top of the Heegaard surface, one per unmarked arc; bottom
regions are the unmarked faces of the diagram.  The closed form uses the
coloring and Goeritz matrices; two independent oracles re-derive it from the
local relations at each crossing and, for pairs with equal psi vectors, from
winding numbers of the connecting curve.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .. import exact_linalg as la
from ..diagram import BLACK, WHITE
from ..errors import ConventionError, InconsistentSystem
from ..kauffman import KauffmanState

@dataclass(frozen=True)
class FloerDomain:
    source: int
    target: int
    arc_coeffs: tuple[Fraction, ...]  # over unmarked arcs
    black_coeffs: tuple[Fraction, ...]  # over unmarked black faces
    white_coeffs: tuple[Fraction, ...]  # over unmarked white faces

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self.arc_coeffs + self.black_coeffs + self.white_coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    @property
    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    @property
    def top_supported(self) -> bool:
        return not any(self.black_coeffs) and not any(self.white_coeffs)

    @property
    def max_coefficient(self) -> Fraction:
        return max(self.coefficients, default=Fraction(0))

    def to_dict(self) -> dict:
        def fmt(v):
            return [str(c) for c in v]

        return {
            "source": self.source,
            "target": self.target,
            "arcs": fmt(self.arc_coeffs),
            "black": fmt(self.black_coeffs),
            "white": fmt(self.white_coeffs),
        }


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def domain(model, x: KauffmanState, y: KauffmanState) -> FloerDomain:
    """Closed form: A^{-1}(xi_x - xi_y), G_B^{-1}(v^B_x - v^B_y)/2, -G_W^{-1}(v^W_x - v^W_y)/2.

    The bottom signs are the ones for which the top and bottom halves glue
    along the marked white region (see `seam_defects`).
    """
    arcs = la.matvec(model.coloring_inv, _sub(x.xi, y.xi)) if model.coloring_matrix else []
    black = [c / 2 for c in la.matvec(model.g_black_inv, _sub(x.v_black, y.v_black))] if model.g_black else []
    white = [-c / 2 for c in la.matvec(model.g_white_inv, _sub(x.v_white, y.v_white))] if model.g_white else []
    return FloerDomain(x.sid, y.sid, tuple(map(Fraction, arcs)), tuple(map(Fraction, black)), tuple(map(Fraction, white)))


def _full_xi(d, x: KauffmanState) -> list[int]:
    return [int(d.quadrant_color(c, x.assignment[c]) == BLACK) for c in range(d.n)]


def arc_relations(d) -> list[list[int]]:
    """Row c: coefficients of -mu(c) (2 a_over - a_under - a_under') over all arcs."""
    rows = []
    for c in range(d.n):
        row = [0] * len(d.arcs)
        for a in d.arcs:
            under = (a.start == c) + (a.end == c)
            row[a.aid] = -d.mu[c] * (2 * a.over.count(c) - under)
        rows.append(row)
    return rows


def region_relations(d) -> list[list[int]]:
    """Row c: faces behind the under-strand minus faces ahead of it, over all faces.

    "Ahead" is the side of the under-strand that the over-strand runs into,
    i.e. the two quadrants touching the outgoing over slot.
    """
    rows = []
    for c in range(d.n):
        out = (d.over_in_slot(c) + 2) % 4
        ahead = {(out - 1) % 4, out}
        row = [0] * len(d.faces)
        for k in range(4):
            row[d.corner_face[(c, k)]] += -1 if k in ahead else 1
        rows.append(row)
    return rows


def domain_oracle(model, x: KauffmanState, y: KauffmanState) -> FloerDomain:
    """Solve the local relations at every crossing, with marked coefficients pinned to 0."""
    d = model.d
    # arcs: all n crossings, marked arc dropped
    rel = arc_relations(d)
    keep = [a.aid for a in d.arcs if a.aid != d.marked_arc]
    dxi = _sub(_full_xi(d, x), _full_xi(d, y))
    arcs = la.solve_exact([[r[a] for a in keep] for r in rel], dxi) if keep else []
    if not keep and any(dxi):
        raise InconsistentSystem("arc relations have no solution")
    # bottom regions: all n crossings, both marked faces dropped
    rel = region_relations(d)
    marked = {d.root_black, d.root_white}
    black = [f for f in d.faces_of(BLACK) if f not in marked]
    white = [f for f in d.faces_of(WHITE) if f not in marked]
    cols = black + white
    dpsi = [Fraction(a - b, 2) for a, b in zip(x.psi, y.psi)]
    sol = la.solve_exact([[r[f] for f in cols] for r in rel], dpsi) if cols else []
    if not cols and any(dpsi):
        raise InconsistentSystem("region relations have no solution")
    return FloerDomain(
        x.sid, y.sid, tuple(arcs), tuple(sol[: len(black)]), tuple(sol[len(black):])
    )


def winding_domain(model, x: KauffmanState, y: KauffmanState) -> tuple[Fraction, ...]:
    """Arc coefficients from winding numbers of the connecting curve (equal psi vectors only).

    Inside each unmarked face R the curve runs along the boundary from the
    corner chosen by x to the corner chosen by y, keeping R on its right; at
    crossings it hops between corners through the gap in the under-strand,
    which crosses no arc.  Winding numbers are propagated across faces and
    normalized to vanish at the marked point.
    """
    d = model.d
    if x.psi != y.psi:
        raise ValueError("winding construction needs equal psi vectors")
    marked = {d.root_black, d.root_white}
    xc = {d.corner_face[(c, x.assignment[c])]: (c, x.assignment[c]) for c in range(d.n)}
    yc = {d.corner_face[(c, y.assignment[c])]: (c, y.assignment[c]) for c in range(d.n)}
    # cover[(face, label)] = number of times the curve in that face runs along that edge
    cover: dict = {}
    for f in d.faces:
        if f.fid in marked or xc[f.fid] == yc[f.fid]:
            continue
        i = f.corners.index(xc[f.fid])
        j = f.corners.index(yc[f.fid])
        k = i
        while k != j:
            k = (k - 1) % len(f)
            key = (f.fid, f.labels[k], k)
            cover[key] = cover.get(key, 0) + 1

    def cov(face, label):
        return sum(v for (g, lab, _), v in cover.items() if g == face and lab == label)

    centre = {d.unbounded_face: 0}
    on_edge: dict = {}
    q = deque([d.unbounded_face])
    while q:
        f = q.popleft()
        for lab in set(d.faces[f].labels):
            w_edge = centre[f] + cov(f, lab)
            if lab in on_edge and on_edge[lab] != w_edge:
                raise ConventionError(f"winding number inconsistent on edge {lab}")
            on_edge[lab] = w_edge
            a, b = d.left_face(lab), d.right_face(lab)
            g = b if a == f else a
            w_g = w_edge - cov(g, lab)
            if g in centre:
                if centre[g] != w_g:
                    raise ConventionError(f"winding number inconsistent across edge {lab}")
            else:
                centre[g] = w_g
                q.append(g)
    base = on_edge[d.marked_label]
    out = []
    for a in d.arcs:
        vals = {on_edge[lab] - base for lab in a.labels}
        if len(vals) != 1:
            raise ConventionError(f"winding number varies along arc {a.aid}")
        if a.aid != d.marked_arc:
            out.append(Fraction(vals.pop()))
    return tuple(out)


def seam_defects(model, dom: FloerDomain) -> list[int]:
    """Labels on the marked white region where the two halves of the surface disagree.

    Each arc bordering the marked white region merges with the black region
    across that edge, so their coefficients must be equal.
    """
    d = model.d
    arcs = [a.aid for a in d.arcs if a.aid != d.marked_arc]
    blacks = [f for f in d.faces_of(BLACK) if f != d.root_black]
    ac = dict(zip(arcs, dom.arc_coeffs))
    ac[d.marked_arc] = Fraction(0)
    bc = dict(zip(blacks, dom.black_coeffs))
    bc[d.root_black] = Fraction(0)
    rw = d.root_white
    out = []
    for lab in d.faces[rw].labels:
        across = d.left_face(lab) if d.right_face(lab) == rw else d.right_face(lab)
        if across != rw and ac[d.label_arc[lab]] != bc[across]:
            out.append(lab)
    return out
