"""Ribbon graphs from alpha and beta curves drawn in the plane.

Used to build small synthetic Heegaard-style configurations (a bigon, a
punctured square) for the domain classifier.  Curves are closed polylines;
alpha curves are pairwise disjoint, as are beta curves, and every crossing
must be transverse and away from polyline corners.
"""

from __future__ import annotations

from fractions import Fraction

from .ribbon import RibbonEdge, RibbonGraph, from_curves

Point = tuple[Fraction, Fraction]


def _segments(poly):
    pts = [tuple(map(Fraction, p)) for p in poly]
    return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _intersect(s, t):
    """Proper crossing of two segments as (point, param on s, param on t, sign), else None."""
    (p, p2), (q, q2) = s, t
    r = (p2[0] - p[0], p2[1] - p[1])
    u = (q2[0] - q[0], q2[1] - q[1])
    den = _cross(r, u)
    if den == 0:
        return None
    w = (q[0] - p[0], q[1] - p[1])
    a = _cross(w, u) / den
    b = _cross(w, r) / den
    if not (0 < a < 1 and 0 < b < 1):
        return None
    return (p[0] + a * r[0], p[1] + a * r[1]), a, b, 1 if den > 0 else -1


class Arrangement:
    def __init__(self, alphas: dict, betas: dict):
        self.curves = {("a", k): _segments(v) for k, v in alphas.items()}
        self.curves.update({("b", k): _segments(v) for k, v in betas.items()})
        on_curve: dict = {c: [] for c in self.curves}
        signs = {}
        for ka, sa in self.curves.items():
            if ka[0] != "a":
                continue
            for kb, sb in self.curves.items():
                if kb[0] != "b":
                    continue
                for i, s in enumerate(sa):
                    for j, t in enumerate(sb):
                        hit = _intersect(s, t)
                        if hit is None:
                            continue
                        pt, a, b, sg = hit
                        on_curve[ka].append((i + a, pt))
                        on_curve[kb].append((j + b, pt))
                        signs[pt] = sg
        edges = []
        self.edge_path = []  # polyline of each edge, for side sampling
        for key, hits in on_curve.items():
            hits.sort()
            segs = self.curves[key]
            for i in range(len(hits)):
                (t0, p0), (t1, p1) = hits[i], hits[(i + 1) % len(hits)]
                edges.append(RibbonEdge(p0, p1, key[0], key))
                self.edge_path.append(self._path(segs, t0, p0, t1, p1))
        self.graph: RibbonGraph = from_curves(sorted(signs), edges, signs)

    @staticmethod
    def _path(segs, t0, p0, t1, p1):
        pts = [p0]
        i = int(t0)
        n = len(segs)
        steps = (int(t1) - i) % n
        if steps == 0 and t1 <= t0:
            steps = n
        for k in range(steps):
            pts.append(segs[(i + k + 1) % n][0])
        pts.append(p1)
        return pts

    def sample_point(self, face: int, eps=Fraction(1, 1000)) -> Point:
        """A point just inside a face: to the right of one of its darts, near the tail."""
        e, end = self.graph.faces[face][0]
        path = self.edge_path[e] if end == 0 else self.edge_path[e][::-1]
        (x0, y0), (x1, y1) = path[0], path[1]
        dx, dy = x1 - x0, y1 - y0
        norm = max(abs(dx), abs(dy))
        mx, my = x0 + (dx / norm) * eps * 2, y0 + (dy / norm) * eps * 2
        return mx + dy / norm * eps, my - dx / norm * eps

    def coefficients(self, indicator) -> list[int]:
        return [indicator(self.sample_point(f)) for f in range(len(self.graph.faces))]
