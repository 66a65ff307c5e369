"""The ribbon graph of alpha and beta curves on the Heegaard surface of a marked diagram.

The graph is built straight from the diagram: one vertex per corner of a
region other than the marked white one, plus one for the marked point p.
Alpha edges run around region boundaries (p sits on the marked arc of the
marked black region); beta edges form one cycle per crossing through its
corners in the order q0, q2, q1, q3, plus a loop at p.  Faces of the ribbon
graph are the regions of the surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..diagram import PlanarDiagram
from ..errors import ConventionError, NonIntegralDomain

P = "p"
# beta cycle through the corners of a crossing; q0/q1 and q2/q3 abut along the over-strand
BETA_ORDER = (0, 2, 1, 3)


@dataclass(frozen=True)
class RibbonEdge:
    u: object
    w: object
    kind: str  # "a" or "b"
    curve: object  # ("a", face id) or ("b", crossing) or ("b", "p")
    label: int | None = None  # diagram label for alpha edges


@dataclass
class RibbonGraph:
    vertices: tuple
    edges: tuple[RibbonEdge, ...]
    rotation: dict  # vertex -> darts (edge index, end) counterclockwise
    faces: tuple = ()
    dart_face: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.faces:
            self._trace()

    def _trace(self):
        where = {}
        for v, ds in self.rotation.items():
            for i, dt in enumerate(ds):
                where[dt] = (v, i)
        faces, dart_face = [], {}
        for start in sorted(where, key=repr):
            if start in dart_face:
                continue
            cyc, cur = [], start
            while cur not in dart_face:
                dart_face[cur] = len(faces)
                cyc.append(cur)
                v, i = where[(cur[0], 1 - cur[1])]
                cur = self.rotation[v][(i + 1) % len(self.rotation[v])]
            faces.append(tuple(cyc))
        self.faces = tuple(faces)
        self.dart_face = dart_face

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def sectors(self, v) -> list[int]:
        """Faces of the angular sectors at v; sector i follows dart i counterclockwise."""
        ds = self.rotation[v]
        return [self.dart_face[ds[(i + 1) % len(ds)]] for i in range(len(ds))]

    def sides(self, e: int) -> tuple[int, int]:
        return self.dart_face[(e, 0)], self.dart_face[(e, 1)]

    def tail(self, dart):
        e = self.edges[dart[0]]
        return e.u if dart[1] == 0 else e.w

    def euler_measure(self, f: int) -> Fraction:
        """1 - (corners)/4; every vertex on a face boundary is a corner (alpha and beta alternate)."""
        return 1 - Fraction(len(self.faces[f]), 4)

    def to_dict(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "faces": len(self.faces),
            "genus": self.genus,
        }


def from_curves(vertices, edges: list[RibbonEdge], signs: dict) -> RibbonGraph:
    """Apply the cyclic-order rule: (a+, b+, a-, b-) at sign +1, (b+, a+, b-, a-) at sign -1."""
    pieces: dict = {v: {} for v in vertices}
    for i, e in enumerate(edges):
        pieces[e.u][e.kind + "+"] = (i, 0)
        pieces[e.w][e.kind + "-"] = (i, 1)
    rotation = {}
    for v in vertices:
        pc = pieces[v]
        if len(pc) != 4:
            raise ValueError(f"vertex {v!r} does not meet one alpha and one beta curve")
        if signs[v] == 1:
            rotation[v] = (pc["a+"], pc["b+"], pc["a-"], pc["b-"])
        else:
            rotation[v] = (pc["b+"], pc["a+"], pc["b-"], pc["a-"])
    return RibbonGraph(tuple(vertices), tuple(edges), rotation)


def intersection_sign(v) -> int:
    """+1 on the slot-1 side of the under-strand (quadrants 0, 1), -1 on the slot-3 side."""
    if v == P:
        return 1
    return 1 if v[1] in (0, 1) else -1


def ribbon_graph(d: PlanarDiagram) -> RibbonGraph:
    rw, rb = d.root_white, d.root_black
    verts = [(c, k) for c in range(d.n) for k in range(4) if d.corner_face[(c, k)] != rw] + [P]
    edges: list[RibbonEdge] = []
    for f in d.faces:
        if f.fid == rw:
            continue
        cyc = list(f.corners)
        labs = list(f.labels)
        if f.fid == rb:
            i = labs.index(d.marked_label)
            cyc = cyc[: i + 1] + [P] + cyc[i + 1:]
            labs = labs[: i + 1] + [d.marked_label] + labs[i + 1:]
        for i in range(len(cyc)):
            edges.append(RibbonEdge(cyc[i], cyc[(i + 1) % len(cyc)], "a", ("a", f.fid), labs[i]))
    for c in range(d.n):
        cyc = [(c, k) for k in BETA_ORDER if d.corner_face[(c, k)] != rw]
        for i in range(len(cyc)):
            edges.append(RibbonEdge(cyc[i], cyc[(i + 1) % len(cyc)], "b", ("b", c)))
    edges.append(RibbonEdge(P, P, "b", ("b", P)))
    return from_curves(verts, edges, {v: intersection_sign(v) for v in verts})


def alpha_curve_of(rg: RibbonGraph, v):
    """The alpha curve through vertex v."""
    for e, _ in rg.rotation[v]:
        if rg.edges[e].kind == "a":
            return rg.edges[e].curve
    raise AssertionError("vertex has no alpha edge")


def beta_curve_of(rg: RibbonGraph, v):
    for e, _ in rg.rotation[v]:
        if rg.edges[e].kind == "b":
            return rg.edges[e].curve
    raise AssertionError("vertex has no beta edge")


# --- regions of the surface -------------------------------------------------


def face_regions(d: PlanarDiagram, rg: RibbonGraph) -> list[set]:
    """Per ribbon face, the diagram regions it contains: ("arc", aid) or ("face", fid).

    An alpha edge along label l of region s has the top region of the arc of
    l on the side of dart (e, 0) and the bottom region across l from s on the
    side of dart (e, 1).  Faces meeting the marked white region carry both
    kinds, since the top and bottom merge there.
    """
    out: list[set] = [set() for _ in rg.faces]
    for i, e in enumerate(rg.edges):
        if e.kind != "a":
            continue
        s = e.curve[1]
        lab = e.label
        across = d.left_face(lab) if d.right_face(lab) == s else d.right_face(lab)
        top, bottom = rg.dart_face[(i, 0)], rg.dart_face[(i, 1)]
        out[top].add(("arc", d.label_arc[lab]))
        out[bottom].add(("face", across))
    return out


def face_coefficients(model, dom) -> list[Fraction]:
    """Coefficient of a FloerDomain on every ribbon face (marked regions count 0)."""
    from ..diagram import BLACK, WHITE

    d = model.d
    coef = {("arc", d.marked_arc): Fraction(0), ("face", d.root_black): Fraction(0), ("face", d.root_white): Fraction(0)}
    arcs = [a.aid for a in d.arcs if a.aid != d.marked_arc]
    coef.update({("arc", a): c for a, c in zip(arcs, dom.arc_coeffs)})
    blacks = [f for f in d.faces_of(BLACK) if f != d.root_black]
    whites = [f for f in d.faces_of(WHITE) if f != d.root_white]
    coef.update({("face", f): c for f, c in zip(blacks, dom.black_coeffs)})
    coef.update({("face", f): c for f, c in zip(whites, dom.white_coeffs)})
    out = []
    for keys in model.face_regions:
        vals = {coef[k] for k in keys}
        if len(vals) != 1:
            raise ConventionError(f"regions {sorted(keys)} glue with different coefficients {vals}")
        out.append(vals.pop())
    return out


def state_points(d: PlanarDiagram, x) -> list:
    return [(c, x.assignment[c]) for c in range(d.n)] + [P]


def maslov_index(rg: RibbonGraph, coeffs, xs, ys) -> Fraction:
    """Lipshitz's formula: Euler measure plus the average corner multiplicities at x and y."""
    e = sum(c * rg.euler_measure(f) for f, c in enumerate(coeffs))
    n = Fraction(0)
    for v in list(xs) + list(ys):
        n += Fraction(sum(coeffs[f] for f in rg.sectors(v)), 4)
    return e + n


# --- punctured polygons -------------------------------------------------------


@dataclass(frozen=True)
class DomainShape:
    is_punctured_polygon: bool
    is_arborescent: bool
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "punctured_polygon": self.is_punctured_polygon,
            "arborescent": self.is_arborescent,
            "reason": self.reason,
        }


def _not_polygon(reason: str) -> DomainShape:
    return DomainShape(False, False, reason)


def classify(rg: RibbonGraph, coeffs, xs, ys) -> DomainShape:
    """Punctured-polygon and arborescence tests on the combinatorial surface.

    coeffs: integer coefficient per ribbon face; xs, ys: generator points as
    ribbon vertices, one per alpha curve.
    """
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise NonIntegralDomain("domain has non-integral coefficients")
    if any(c not in (0, 1) for c in coeffs):
        return _not_polygon("coefficient outside {0, 1}")
    support = {f for f, c in enumerate(coeffs) if c == 1}
    if not support:
        return _not_polygon("empty domain")
    xs, ys = list(xs), list(ys)
    inside = lambda f: f in support  # noqa: E731

    # (b) generator components interior to the domain
    for v in set(xs) | set(ys):
        if all(inside(f) for f in rg.sectors(v)):
            return _not_polygon(f"generator point {v!r} interior")
    # (d) every corner is a convex (interior) corner
    for v in rg.vertices:
        sec = [inside(f) for f in rg.sectors(v)]
        k = sum(sec)
        if k == 3:
            return _not_polygon(f"reflex corner at {v!r}")
        if k == 2 and sec[0] == sec[2]:
            return _not_polygon(f"pinched vertex {v!r}")
    # boundary edges: exactly one side in the support
    bnd = [i for i in range(len(rg.edges)) if inside(rg.sides(i)[0]) != inside(rg.sides(i)[1])]
    comps = _boundary_components(rg, bnd, support)
    # (a) genus zero: chi of the support equals 2 - #boundary components, and connected
    if not _connected(rg, support, bnd):
        return _not_polygon("support is disconnected")
    if _support_chi(rg, support) != 2 - len(comps):
        return _not_polygon("support is not planar")
    # (c) all but one boundary component is a full alpha curve
    full_alpha = 0
    for comp in comps:
        kinds = {rg.edges[e].kind for e in comp}
        curves = {rg.edges[e].curve for e in comp}
        if kinds == {"a"} and len(curves) == 1:
            curve = curves.pop()
            if {i for i, e in enumerate(rg.edges) if e.curve == curve} == set(comp):
                full_alpha += 1
    if full_alpha != len(comps) - 1:
        return _not_polygon("boundary is not one polygon plus full alpha curves")
    return DomainShape(True, _arborescent(rg, support, ys), "")


def _boundary_components(rg: RibbonGraph, bnd: list[int], support: set) -> list[list[int]]:
    """Group boundary edges into closed curves, following the boundary through vertices."""
    at: dict = {}
    for e in bnd:
        ed = rg.edges[e]
        at.setdefault(ed.u, []).append(e)
        at.setdefault(ed.w, []).append(e)
    seen, comps = set(), []
    for e in bnd:
        if e in seen:
            continue
        stack, comp = [e], []
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            comp.append(x)
            ed = rg.edges[x]
            for v in (ed.u, ed.w):
                stack.extend(y for y in at[v] if y not in seen)
        comps.append(sorted(comp))
    return comps


def _connected(rg: RibbonGraph, support: set, bnd: list[int]) -> bool:
    adj: dict = {f: set() for f in support}
    for i in range(len(rg.edges)):
        a, b = rg.sides(i)
        if a in support and b in support:
            adj[a].add(b)
            adj[b].add(a)
    start = next(iter(support))
    seen, stack = {start}, [start]
    while stack:
        f = stack.pop()
        for g in adj[f] - seen:
            seen.add(g)
            stack.append(g)
    return seen == support


def _support_chi(rg: RibbonGraph, support: set) -> int:
    faces = len(support)
    edges = sum(1 for i in range(len(rg.edges)) if set(rg.sides(i)) & support)
    verts = sum(1 for v in rg.vertices if set(rg.sectors(v)) & support)
    return verts - edges + faces


def _arborescent(rg: RibbonGraph, support: set, ys) -> bool:
    """No cycles in the alpha-curve graph besides the polygon cycle and loops."""
    succ = {}
    for y in ys:
        a = alpha_curve_of(rg, y)
        end = _beta_hat_end(rg, support, y)
        succ[a] = a if end is None else alpha_curve_of(rg, end)
    seen_cycles = 0
    state: dict = {}
    for a in succ:
        path = []
        cur = a
        while cur not in state and cur in succ:
            state[cur] = a
            path.append(cur)
            cur = succ[cur]
        if cur in path:
            cyc = path[path.index(cur):]
            if len(cyc) > 1:
                seen_cycles += 1
    return seen_cycles <= 1


def _beta_hat_end(rg: RibbonGraph, support: set, y):
    """Far end of the maximal beta arc from y inside the closed domain, or None if trivial."""
    def in_closure(e):
        return bool(set(rg.sides(e)) & support)

    if not set(rg.sectors(y)) & support:
        return None
    bet = [dt for dt in rg.rotation[y] if rg.edges[dt[0]].kind == "b"]
    for dt in bet:
        e = dt[0]
        if not in_closure(e):
            continue
        cur_v, cur_e = y, e
        visited = {e}
        while True:
            ed = rg.edges[cur_e]
            nxt_v = ed.w if ed.u == cur_v else ed.u
            cont = [d2[0] for d2 in rg.rotation[nxt_v] if rg.edges[d2[0]].kind == "b" and d2[0] != cur_e]
            if not cont or cont[0] in visited or not in_closure(cont[0]):
                return nxt_v if nxt_v != y else None
            visited.add(cont[0])
            cur_v, cur_e = nxt_v, cont[0]
    return None
