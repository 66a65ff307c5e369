"""Black and white graphs of a colored diagram, Goeritz and coloring matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import exact_linalg as la
from .diagram import BLACK, WHITE, PlanarDiagram, mu_of_diagram


@dataclass(frozen=True)
class TaitGraph:
    color: str
    vertices: tuple[int, ...]  # face ids, ascending
    root: int
    edges: tuple[tuple[int, int], ...]  # per crossing: the two faces it joins
    mu: tuple[int, ...]  # per crossing
    rotation: dict  # face -> crossings in counterclockwise order (loops twice)

    @property
    def unmarked(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v != self.root)

    def is_loop(self, c: int) -> bool:
        return self.edges[c][0] == self.edges[c][1]

    def other(self, c: int, v: int) -> int:
        a, b = self.edges[c]
        return b if a == v else a

    def incident(self, v: int) -> list[int]:
        return [c for c, (a, b) in enumerate(self.edges) if v in (a, b)]

    def laplacian_minor(self) -> list[list[int]]:
        """Unsigned reduced Laplacian (root deleted); its determinant counts spanning trees."""
        idx = {v: i for i, v in enumerate(self.unmarked)}
        m = len(idx)
        lap = [[0] * m for _ in range(m)]
        for a, b in self.edges:
            if a == b:
                continue
            for x, y in ((a, b), (b, a)):
                if x in idx:
                    lap[idx[x]][idx[x]] += 1
                    if y in idx:
                        lap[idx[x]][idx[y]] -= 1
        return lap

    def goeritz(self) -> list[list[int]]:
        """g_ij = sum of mu over edges joining v_i, v_j; g_ii = -sum of mu over non-loop edges at v_i."""
        idx = {v: i for i, v in enumerate(self.unmarked)}
        m = len(idx)
        g = [[0] * m for _ in range(m)]
        for c, (a, b) in enumerate(self.edges):
            if a == b:
                continue
            mu = self.mu[c]
            for x, y in ((a, b), (b, a)):
                if x in idx:
                    g[idx[x]][idx[x]] -= mu
                    if y in idx:
                        g[idx[x]][idx[y]] += mu
        return g

    def bfs_parent_edges(self) -> dict:
        """Vertex -> crossing of the edge toward the root in a BFS tree (lowest ids first)."""
        parent: dict = {self.root: None}
        q = deque([self.root])
        while q:
            v = q.popleft()
            for c in self.incident(v):
                w = self.other(c, v)
                if w not in parent:
                    parent[w] = c
                    q.append(w)
        return parent


@dataclass(frozen=True)
class TaitPair:
    black: TaitGraph
    white: TaitGraph

    def graph(self, color: str) -> TaitGraph:
        return self.black if color == BLACK else self.white


def _graph(d: PlanarDiagram, color: str) -> TaitGraph:
    verts = d.faces_of(color)
    edges = []
    for c in range(d.n):
        k = d.black_quadrants(c)[0] if color == BLACK else d.white_quadrants(c)[0]
        edges.append((d.corner_face[(c, k)], d.corner_face[(c, k + 2)]))
    rotation = {f: tuple(c for c, _ in d.faces[f].corners) for f in verts}
    root = d.root_black if color == BLACK else d.root_white
    return TaitGraph(color, verts, root, tuple(edges), d.mu, rotation)


def build_tait_pair(d: PlanarDiagram) -> TaitPair:
    return TaitPair(_graph(d, BLACK), _graph(d, WHITE))


def goeritz(tp: TaitPair, color: str) -> list[list[int]]:
    return tp.graph(color).goeritz()


def coloring_matrix(d: PlanarDiagram) -> list[list[int]]:
    """Rows: unmarked crossings; columns: unmarked arcs (ascending ids)."""
    rows = [c for c in range(d.n) if c != d.marked_crossing]
    cols = [a.aid for a in d.arcs if a.aid != d.marked_arc]
    out = []
    for c in rows:
        mu = d.mu[c]
        row = []
        for aid in cols:
            arc = d.arcs[aid]
            under = (arc.start == c) + (arc.end == c)
            over = arc.over.count(c)
            row.append(mu * under - 2 * mu * over)
        out.append(row)
    return out


@dataclass(frozen=True)
class ClassicalInvariants:
    determinant: int
    gl_signature: int
    spanning_tree_count: int
    smith_factors: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "determinant": self.determinant,
            "signature": self.gl_signature,
            "spanning_tree_count": self.spanning_tree_count,
            "smith_factors": list(self.smith_factors),
        }


def classical_invariants(tp: TaitPair, d: PlanarDiagram) -> ClassicalInvariants:
    gb = tp.black.goeritz()
    detb = abs(la.det(gb))
    # with g_ij = +sum(mu) the Gordon-Litherland correction enters with a plus sign
    sig = (la.signature(gb) if gb else 0) + mu_of_diagram(d) if detb else None
    trees = la.det(tp.black.laplacian_minor())
    factors = la.smith_form(gb).nontrivial if gb else ()
    return ClassicalInvariants(detb, sig, trees, factors)


@dataclass(frozen=True)
class GroupPresentation:
    h1_matrix: list
    generators: tuple[str, ...]
    relators: tuple[tuple[tuple[int, int | None, int], ...], ...]  # (j, k or None, exponent)

    def relator_strings(self) -> tuple[str, ...]:
        out = []
        for word in self.relators:
            parts = []
            for j, k, e in word:
                inner = f"x{j}" if k is None else f"x{j}x{k}^-1"
                parts.append(f"({inner})^{e:+d}")
            out.append("".join(parts))
        return tuple(out)

    def exponent_matrix(self) -> list[list[int]]:
        m = len(self.generators)
        rows = []
        for word in self.relators:
            row = [0] * m
            for j, k, e in word:
                row[j - 1] += e
                if k is not None:
                    row[k - 1] -= e
            rows.append(row)
        return rows


def group_presentations(tp: TaitPair) -> GroupPresentation:
    """One generator per unmarked black vertex, one relator read clockwise around it."""
    b = tp.black
    verts = b.unmarked
    num = {v: i + 1 for i, v in enumerate(verts)}
    parent = b.bfs_parent_edges()
    relators = []
    for v in verts:
        cw = list(reversed(b.rotation[v]))
        pe = parent.get(v)
        if pe in cw:
            k = cw.index(pe)
            cw = cw[k + 1:] + cw[:k + 1]
        word = []
        for c in cw:
            if b.is_loop(c):
                continue
            w = b.other(c, v)
            word.append((num[v], num.get(w), b.mu[c]))
        relators.append(tuple(word))
    return GroupPresentation(b.goeritz(), tuple(f"x{i}" for i in num.values()), tuple(relators))
