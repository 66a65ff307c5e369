"""Link diagrams from signed plane graphs (the medial construction).

A plane graph is given by a rotation system: for every vertex the
counterclockwise list of incident edge ids.  The resulting diagram has one
crossing per edge, the vertex regions are white and the graph's faces are
black, so the white graph of the diagram is the input graph.  The sign of
an edge is the incidence number mu of its crossing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import UNBOUNDED_BLACK, UNBOUNDED_WHITE, WHITE, PlanarDiagram, parse_diagram
from .errors import NonPlanar


@dataclass
class PlaneGraph:
    edges: list[tuple[int, int]]  # edge id -> (u, w); loops are not supported
    rotation: dict[int, list[int]]  # vertex -> incident edges, counterclockwise
    signs: list[int] = field(default_factory=list)  # edge id -> mu

    def __post_init__(self):
        if not self.signs:
            self.signs = [1] * len(self.edges)

    @property
    def vertices(self) -> list[int]:
        return sorted(self.rotation)

    def darts(self, v: int) -> list[tuple[int, int]]:
        """Counterclockwise darts (edge, end) leaving v; end 0 leaves edges[e][0]."""
        return [(e, 0 if self.edges[e][0] == v else 1) for e in self.rotation[v]]

    def faces(self) -> list[list[tuple[int, int]]]:
        """Face boundaries as dart cycles; each face lies to the left of its darts."""
        nxt = {}
        for v in self.rotation:
            ds = self.darts(v)
            for i, d in enumerate(ds):
                nxt[d] = ds[(i + 1) % len(ds)]
        seen, out = set(), []
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc, d = [], start
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                # arrive at the far end, then turn to the next dart clockwise there
                rev = (d[0], 1 - d[1])
                w = self.edges[d[0]][rev[1]]
                ds = self.darts(w)
                d = ds[(ds.index(rev) - 1) % len(ds)]
            out.append(cyc)
        return out

    def is_planar_embedding(self) -> bool:
        v, e = len(self.rotation), len(self.edges)
        return len(self.faces()) == e - v + 2


# end positions at a crossing, counterclockwise: NE, NW, SW, SE with edge u -> w running west to east
# dart from u: left end NW (1), right end SW (2); dart from w: left end SE (3), right end NE (0)
_LEFT = (1, 3)
_RIGHT = (2, 0)


def medial_pd(g: PlaneGraph) -> list[tuple[int, int, int, int]]:
    """PD tuples of the medial diagram, labels running consecutively along components."""
    return _medial(g)[0]


def _medial(g: PlaneGraph):
    if any(u == w for u, w in g.edges):
        raise ValueError("loops are not supported")
    # medial edges: one per corner, joining two crossing ends
    link = {}
    for v in g.rotation:
        ds = g.darts(v)
        for i, (e, s) in enumerate(ds):
            e2, s2 = ds[(i + 1) % len(ds)]
            a, b = (e, _LEFT[s]), (e2, _RIGHT[s2])
            link[a] = b
            link[b] = a
    # trace components; a medial edge is labelled when first traversed
    ends_in: dict = {}  # (crossing, pos) -> label of the medial edge entering there
    ends_out: dict = {}
    used = set()
    nxt_label = 1
    for start in sorted(link):
        if start in used:
            continue
        cur = start
        while cur not in used:
            far = link[cur]
            used.add(cur)
            used.add(far)
            ends_out[cur] = nxt_label
            ends_in[far] = nxt_label
            nxt_label += 1
            cur = (far[0], (far[1] + 2) % 4)
    tuples, offsets = [], []
    for c in range(len(g.edges)):
        # the under-strand enters at an odd position for mu = +1 (white quadrant follows it)
        want = 1 if g.signs[c] == 1 else 0
        p = next(q for q in range(4) if q % 2 == want and (c, q) in ends_in)
        lab = []
        for k in range(4):
            q = (p + k) % 4
            lab.append(ends_in[(c, q)] if (c, q) in ends_in else ends_out[(c, q)])
        tuples.append(tuple(lab))
        offsets.append(p)
    return tuples, offsets


def medial_diagram(g: PlaneGraph, root: int, **kw) -> PlanarDiagram:
    """The medial diagram with the white root at vertex region `root`.

    The marked label is the lowest label on the boundary of the root region.
    """
    if not g.is_planar_embedding():
        raise NonPlanar("rotation system does not describe a plane graph")
    code, offsets = _medial(g)
    for conv in (UNBOUNDED_BLACK, UNBOUNDED_WHITE):
        d = parse_diagram(code, coloring=conv)
        vmap = _vertex_faces(d, g, offsets)
        if vmap is not None:
            break
    else:
        raise AssertionError("vertex regions did not come out white")
    region = vmap[root]
    mark = min(d.faces[region].labels)
    if "mark_label" not in kw:
        kw["mark_label"] = mark
    return parse_diagram(code, coloring=conv, **kw)


def _vertex_faces(d: PlanarDiagram, g: PlaneGraph, offsets: list[int]):
    """Vertex -> face id of its region, or None if these regions are not white."""
    out = {}
    for v in g.rotation:
        faces = set()
        for e in g.rotation[v]:
            pos = 1 if g.edges[e][0] == v else 3
            faces.add(d.corner_face[(e, (pos - offsets[e]) % 4)])
        if len(faces) != 1:
            return None
        out[v] = faces.pop()
    if len(set(out.values())) != len(out) or any(d.coloring[f] != WHITE for f in out.values()):
        return None
    return out


def e8_graph() -> PlaneGraph:
    """White graph whose reduced Goeritz matrix is the E8 plumbing (all weights -2).

    Vertex 0 is the root, 1 the trivalent vertex; arms of lengths 1, 2, 4 hang
    off it.  Leaves join the root with mu = +1 and the trivalent vertex joins
    it with mu = -1.
    """
    # arm a: 2; arm b: 3-4; arm c: 5-6-7-8
    edges = [(1, 2), (1, 3), (3, 4), (1, 5), (5, 6), (6, 7), (7, 8), (0, 1), (0, 2), (0, 4), (0, 8)]
    signs = [1, 1, 1, 1, 1, 1, 1, -1, 1, 1, 1]
    rotation = {
        0: [7, 9, 10, 8],
        1: [7, 0, 3, 1],
        2: [0, 8],
        3: [1, 2],
        4: [2, 9],
        5: [3, 4],
        6: [4, 5],
        7: [5, 6],
        8: [6, 10],
    }
    g = PlaneGraph(edges, rotation, signs)
    if not g.is_planar_embedding():
        g = _planarize(g)
    return g


def _planarize(g: PlaneGraph) -> PlaneGraph:
    """Search rotations (vertices of degree >= 3 only) for a planar one."""
    import itertools

    big = [v for v in g.rotation if len(g.rotation[v]) >= 3]
    choices = []
    for v in big:
        first, *rest = g.rotation[v]
        choices.append([[first, *p] for p in itertools.permutations(rest)])
    for combo in itertools.product(*choices):
        rot = dict(g.rotation)
        for v, r in zip(big, combo):
            rot[v] = list(r)
        h = PlaneGraph(g.edges, rot, g.signs)
        if h.is_planar_embedding():
            return h
    raise NonPlanar("graph has no planar rotation")


def random_plane_graph(rng: random.Random, n_vertices: int, n_extra: int, signs: str = "positive") -> PlaneGraph:
    """A random connected plane graph without loops.

    Grows a random tree by attaching leaves at random rotation positions, then
    adds chords inside random faces.  `signs` is "positive" (alternating
    diagrams), "negative", or "mixed".
    """
    edges: list = []
    rotation: dict = {0: []}
    for v in range(1, n_vertices):
        u = rng.randrange(v)
        e = len(edges)
        edges.append((u, v))
        rotation[u].insert(rng.randrange(len(rotation[u]) + 1), e)
        rotation[v] = [e]
    g = PlaneGraph(edges, rotation)
    for _ in range(n_extra):
        faces = g.faces()
        face = rng.choice(faces)
        if len(face) < 2:
            continue
        i, j = rng.sample(range(len(face)), 2)
        di, dj = face[i], face[j]
        u = g.edges[di[0]][di[1]]
        w = g.edges[dj[0]][dj[1]]
        if u == w:
            continue
        e = len(g.edges)
        g.edges.append((u, w))
        # the face corner at the tail of dart d follows d counterclockwise
        g.rotation[u].insert(g.rotation[u].index(di[0]) + 1, e)
        g.rotation[w].insert(g.rotation[w].index(dj[0]) + 1, e)
    if signs == "positive":
        g.signs = [1] * len(g.edges)
    elif signs == "negative":
        g.signs = [-1] * len(g.edges)
    else:
        g.signs = [rng.choice((1, -1)) for _ in g.edges]
    return g


def e8_diagram() -> PlanarDiagram:
    """The T(3,5) diagram whose branched double cover has generators graded -2 upward.

    This is the medial diagram of `e8_graph` mirrored and recolored, so that
    the marked black region becomes the marked white one; marked at label 22,
    every generator grading is the negative of the medial diagram's.
    """
    from .diagram import checkerboard_color, mirror, with_marks

    d = medial_diagram(e8_graph(), 0)
    return with_marks(checkerboard_color(mirror(d), UNBOUNDED_WHITE), 22)
