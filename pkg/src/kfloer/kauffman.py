"""Kauffman states as spanning trees of the black graph, with their derived data."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .diagram import BLACK, SLOT_DIRS, WHITE, PlanarDiagram
from .tait import TaitGraph, TaitPair

# quadrants on the slot-2 side / slot-0 side of the over-strand (slots 1 and 3)
SIDE_OF_QUADRANT = (0, 1, 1, 0)


def same_side_partner(k: int) -> int:
    """The other quadrant on the same side of the over-strand as quadrant k."""
    return {0: 3, 3: 0, 1: 2, 2: 1}[k]


@dataclass(frozen=True)
class KauffmanState:
    sid: int
    assignment: tuple[int, ...]  # crossing -> quadrant chosen at that crossing
    t_black: tuple[int, ...]  # crossings whose B-edge is in the tree
    t_white: tuple[int, ...]
    delta_white: int
    delta_black: int
    v_white: tuple[int, ...]  # over unmarked white vertices (ascending face id)
    v_black: tuple[int, ...]
    xi: tuple[int, ...]  # over unmarked crossings
    psi: tuple[int, ...]  # over all crossings
    corner_faces: tuple[int, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {
            "id": self.sid,
            "assignment": list(self.assignment),
            "tree_black": list(self.t_black),
            "tree_white": list(self.t_white),
            "delta_white": self.delta_white,
            "delta_black": self.delta_black,
            "v_white": list(self.v_white),
            "v_black": list(self.v_black),
            "xi": list(self.xi),
            "psi": list(self.psi),
        }


def spanning_trees(g: TaitGraph) -> list[tuple[int, ...]]:
    """All spanning trees as sorted crossing tuples, by contraction/deletion in crossing order."""
    verts = list(g.vertices)
    edges = [c for c in range(len(g.edges)) if not g.is_loop(c)]
    need = len(verts) - 1
    out: list = []

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def connected(parent, rest):
        p = dict(parent)
        for c in rest:
            a, b = find(p, g.edges[c][0]), find(p, g.edges[c][1])
            if a != b:
                p[a] = b
        return len({find(p, v) for v in verts}) == 1

    def rec(i, parent, chosen):
        if len(chosen) == need:
            out.append(tuple(chosen))
            return
        if i == len(edges) or len(edges) - i < need - len(chosen):
            return
        c = edges[i]
        a, b = find(parent, g.edges[c][0]), find(parent, g.edges[c][1])
        if a != b:
            p = dict(parent)
            p[a] = b
            rec(i + 1, p, chosen + [c])
        if connected(parent, edges[i + 1:]):
            rec(i + 1, parent, chosen)

    rec(0, {v: v for v in verts}, [])
    return sorted(out)


def _orient_tree(g: TaitGraph, tree: tuple[int, ...]) -> dict:
    """Crossing -> child face for the tree oriented out of the root."""
    adj = defaultdict(list)
    for c in tree:
        a, b = g.edges[c]
        adj[a].append((c, b))
        adj[b].append((c, a))
    child = {}
    stack = [g.root]
    seen = {g.root}
    while stack:
        v = stack.pop()
        for c, w in adj[v]:
            if w not in seen:
                seen.add(w)
                child[c] = w
                stack.append(w)
    return child


def _quadrant_of_face(d: PlanarDiagram, c: int, quads, face: int) -> int:
    for k in quads:
        if d.corner_face[(c, k)] == face:
            return k
    raise AssertionError("face does not touch crossing")


def _degrees(d: PlanarDiagram, g: TaitGraph, assignment, color: str, black_side: str) -> tuple[int, ...]:
    idx = {v: i for i, v in enumerate(g.unmarked)}
    v = [0] * len(idx)
    for c in range(d.n):
        if g.is_loop(c):
            continue
        quads = d.white_quadrants(c) if color == WHITE else d.black_quadrants(c)
        side = SIDE_OF_QUADRANT[assignment[c]]
        if color == BLACK and black_side == "under":
            # sides of the under-strand: quadrants {0,1} versus {2,3}
            side = 0 if assignment[c] in (0, 1) else 1
            head_k = next(k for k in quads if (0 if k in (0, 1) else 1) == side)
        else:
            head_k = next(k for k in quads if SIDE_OF_QUADRANT[k] == side)
        tail_k = quads[0] if head_k == quads[1] else quads[1]
        head, tail = d.corner_face[(c, head_k)], d.corner_face[(c, tail_k)]
        if tail in idx:
            v[idx[tail]] += 1
        if head in idx:
            v[idx[head]] -= 1
    return tuple(v)


def psi_value(d: PlanarDiagram, c: int, k: int) -> int:
    """+1 when quadrant k lies to the right of the oriented over-strand at c."""
    oi = d.over_in_slot(c)
    dx, dy = SLOT_DIRS[(oi + 2) % 4]
    right = (dy, -dx)
    ax, ay = SLOT_DIRS[k]
    bx, by = SLOT_DIRS[(k + 1) % 4]
    s = (ax + bx) * right[0] + (ay + by) * right[1]
    return 1 if s > 0 else -1


def state_from_tree(d: PlanarDiagram, tp: TaitPair, tree: tuple[int, ...], sid: int = 0, black_side: str = "over") -> KauffmanState:
    tset = set(tree)
    t_white = tuple(c for c in range(d.n) if c not in tset)
    assignment = [None] * d.n
    for c, face in _orient_tree(tp.black, tree).items():
        assignment[c] = _quadrant_of_face(d, c, d.black_quadrants(c), face)
    for c, face in _orient_tree(tp.white, t_white).items():
        assignment[c] = _quadrant_of_face(d, c, d.white_quadrants(c), face)
    if any(a is None for a in assignment):
        raise AssertionError("complement of a black spanning tree is not a white spanning tree")
    assignment = tuple(assignment)
    unmarked_c = [c for c in range(d.n) if c != d.marked_crossing]
    xi = tuple(int(d.quadrant_color(c, assignment[c]) == BLACK) for c in unmarked_c)
    psi = tuple(psi_value(d, c, assignment[c]) for c in range(d.n))
    return KauffmanState(
        sid=sid,
        assignment=assignment,
        t_black=tuple(sorted(tree)),
        t_white=t_white,
        delta_white=sum(1 for c in t_white if d.mu[c] == -1),
        delta_black=sum(1 for c in tree if d.mu[c] == 1),
        v_white=_degrees(d, tp.white, assignment, WHITE, black_side),
        v_black=_degrees(d, tp.black, assignment, BLACK, black_side),
        xi=xi,
        psi=psi,
        corner_faces=tuple(d.corner_face[(c, assignment[c])] for c in range(d.n)),
    )


def enumerate_states(d: PlanarDiagram, tp: TaitPair, black_side: str = "over") -> list[KauffmanState]:
    return [state_from_tree(d, tp, t, i, black_side) for i, t in enumerate(spanning_trees(tp.black))]


def tree_of_state(d: PlanarDiagram, tp: TaitPair, assignment) -> tuple[int, ...]:
    """Inverse of the tree-to-state map: crossings whose chosen corner is black."""
    return tuple(c for c in range(d.n) if d.quadrant_color(c, assignment[c]) == BLACK)


@dataclass(frozen=True)
class PsiClass:
    psi: tuple[int, ...]
    members: tuple[int, ...]  # state ids
    cycles: int

    @property
    def solitary(self) -> bool:
        return self.cycles == 0

    def to_dict(self) -> dict:
        return {"psi": list(self.psi), "members": list(self.members), "cycles": self.cycles}


def matching_cycles(d: PlanarDiagram, x: KauffmanState) -> int:
    """Number of independent cycles in m_x together with the same-side matching m'_x."""
    parent: dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    cycles = 0
    for c in range(d.n):
        k = x.assignment[c]
        for q in (k, same_side_partner(k)):
            f = ("f", d.corner_face[(c, q)])
            a, b = find(("c", c)), find(f)
            if a == b:
                cycles += 1
            else:
                parent[a] = b
    return cycles


def psi_partition(d: PlanarDiagram, states: list[KauffmanState]) -> list[PsiClass]:
    groups: dict = defaultdict(list)
    for x in states:
        groups[x.psi].append(x)
    out = []
    for psi in sorted(groups):
        members = groups[psi]
        cyc = matching_cycles(d, members[0])
        out.append(PsiClass(psi, tuple(x.sid for x in members), cyc))
    return out
