"""Planar diagram codes: parsing, face tracing, checkerboard coloring, marks.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting at
the incoming under-strand, so slots 0 and 2 carry the under-strand and slots
1 and 3 the over-strand.  The quadrant ``k`` of a crossing is the corner
between slots ``k`` and ``k+1`` (mod 4).  Edges are the PD labels; arcs are
the classical over-arcs running from one undercrossing to the next.
"""

from __future__ import annotations

import dataclasses
import json
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import Disconnected, MalformedCode, NonPlanar

UNBOUNDED_WHITE = "unbounded_white"
UNBOUNDED_BLACK = "unbounded_black"
COLORINGS = (UNBOUNDED_WHITE, UNBOUNDED_BLACK)

BLACK = "B"
WHITE = "W"

# unit vectors pointing from the crossing centre out through each slot
SLOT_DIRS = ((0, -1), (1, 0), (0, 1), (-1, 0))


@dataclass(frozen=True)
class Face:
    """A face of the diagram, traced with the face on the left.

    ``darts[i]`` is the (crossing, slot) the walk leaves through; the corner
    the walk turns at just before leaving is quadrant ``slot`` of that
    crossing, so ``corners == darts`` as (crossing, quadrant) pairs.
    """

    fid: int
    darts: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]

    @property
    def corners(self) -> tuple[tuple[int, int], ...]:
        return self.darts

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class Arc:
    aid: int
    labels: tuple[int, ...]
    start: int | None  # crossing where the arc emerges from under
    end: int | None  # crossing where the arc dives under
    over: tuple[int, ...]  # crossings the arc passes over, in order
    component: int


@dataclass(frozen=True)
class CrossingAttributes:
    mu: int
    sign: int
    # "II" when the strands run parallel through the white band at the crossing
    # (equivalently antiparallel through the black band), "I" otherwise
    crossing_type: str


@dataclass(frozen=True)
class PlanarDiagram:
    code: tuple[tuple[int, int, int, int], ...]
    tails: dict  # label -> (crossing, slot) where the edge starts
    heads: dict  # label -> (crossing, slot) where the edge ends
    components: tuple[tuple[int, ...], ...]  # labels in traversal order
    faces: tuple[Face, ...]
    corner_face: dict  # (crossing, quadrant) -> face id
    unbounded_face: int
    arcs: tuple[Arc, ...]
    label_arc: dict  # label -> arc id
    convention: str
    coloring: tuple[str, ...]  # per face
    mu: tuple[int, ...]  # per crossing
    marked_label: int
    marked_crossing: int

    @property
    def n(self) -> int:
        return len(self.code)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(sorted(self.heads))

    @property
    def marked_arc(self) -> int:
        return self.label_arc[self.marked_label]

    def left_face(self, label: int) -> int:
        return self.corner_face[self.tails[label]]

    def right_face(self, label: int) -> int:
        return self.corner_face[self.heads[label]]

    @property
    def root_black(self) -> int:
        return self._marked_faces()[BLACK]

    @property
    def root_white(self) -> int:
        return self._marked_faces()[WHITE]

    def _marked_faces(self) -> dict:
        a = self.left_face(self.marked_label)
        b = self.right_face(self.marked_label)
        return {self.coloring[a]: a, self.coloring[b]: b}

    def faces_of(self, color: str) -> tuple[int, ...]:
        return tuple(f.fid for f in self.faces if self.coloring[f.fid] == color)

    def is_incoming(self, c: int, s: int) -> bool:
        return self.heads[self.code[c][s]] == (c, s)

    def under_in_slot(self, c: int) -> int:
        return 0 if self.is_incoming(c, 0) else 2

    def over_in_slot(self, c: int) -> int:
        return 1 if self.is_incoming(c, 1) else 3

    def quadrant_color(self, c: int, k: int) -> str:
        return self.coloring[self.corner_face[(c, k % 4)]]

    def black_quadrants(self, c: int) -> tuple[int, int]:
        k = 1 if self.mu[c] == 1 else 0
        return (k, k + 2)

    def white_quadrants(self, c: int) -> tuple[int, int]:
        k = 0 if self.mu[c] == 1 else 1
        return (k, k + 2)

    def component_of_label(self, label: int) -> int:
        for i, comp in enumerate(self.components):
            if label in comp:
                return i
        raise KeyError(label)

    def is_alternating(self) -> bool:
        return len(set(self.mu)) == 1

    def to_dict(self) -> dict:
        return {
            "code": [list(t) for t in self.code],
            "convention": self.convention,
            "marked_label": self.marked_label,
            "marked_crossing": self.marked_crossing,
            "components": [list(c) for c in self.components],
            "faces": [list(f.labels) for f in self.faces],
            "unbounded_face": self.unbounded_face,
            "coloring": list(self.coloring),
            "arcs": [list(a.labels) for a in self.arcs],
            "mu": list(self.mu),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


_TUPLE_RE = re.compile(r"[\(\[]\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*[\)\]]")


def _tokenize(text: str) -> list[tuple[int, ...]]:
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    body = " ".join(lines)
    out = []
    for m in _TUPLE_RE.finditer(body):
        out.append(tuple(int(v) for v in m.group(1).split(",")))
    if not out:
        raise MalformedCode("no crossing tuples found")
    return out


def _as_tuples(code) -> list[tuple[int, ...]]:
    if isinstance(code, str):
        stripped = code.strip()
        if stripped.startswith("{"):
            return [tuple(t) for t in json.loads(stripped)["code"]]
        return _tokenize(code)
    return [tuple(int(v) for v in t) for t in code]


def _other_end(ends, label, e):
    rest = [x for x in ends[label] if x != e]
    return rest[0] if rest else e


def _walk(code, ends, start, head, heads, tails):
    """Follow a component from edge ``start`` ending at ``head``; record orientation."""
    seq = []
    label, h = start, head
    while True:
        t = _other_end(ends, label, h)
        if label in heads and (heads[label] != h or tails[label] != t):
            raise MalformedCode(f"inconsistent orientation on edge {label}")
        if h[1] == 2 or t[1] == 0:
            raise MalformedCode(f"edge {label} breaks the incoming-under-strand convention")
        heads[label], tails[label] = h, t
        seq.append(label)
        c, s = h
        nxt_tail = (c, (s + 2) % 4)
        label = code[c][nxt_tail[1]]
        h = _other_end(ends, label, nxt_tail)
        if label == start:
            return seq


def _orient(code, ends) -> tuple[dict, dict, list[list[int]]]:
    """Orient every edge.  Slot 0 is always an incoming under-strand."""
    heads: dict = {}
    tails: dict = {}
    components: list[list[int]] = []
    for label in sorted(ends):
        if label in heads:
            continue
        anchored = None
        for c, s in ends[label]:
            if s == 0:
                anchored = (c, s)
            elif s == 2:
                anchored = _other_end(ends, label, (c, s))
        if anchored is not None:
            components.append(_walk(code, ends, label, anchored, heads, tails))
    for label in sorted(ends):
        if label in heads:
            continue
        # a component that never passes under: orient so labels increase
        a, b = ends[label]
        c, s = a
        forward = code[c][(s + 2) % 4] == label + 1
        components.append(_walk(code, ends, label, a if forward else b, heads, tails))
    return heads, tails, components


def _trace_faces(code, ends) -> tuple[list[Face], dict]:
    def other(c, s):
        label = code[c][s]
        e = [x for x in ends[label] if x != (c, s)]
        return e[0] if e else (c, s)

    seen = set()
    faces = []
    corner_face = {}
    for c in range(len(code)):
        for s in range(4):
            if (c, s) in seen:
                continue
            darts, labels = [], []
            cur = (c, s)
            while cur not in seen:
                seen.add(cur)
                darts.append(cur)
                labels.append(code[cur[0]][cur[1]])
                c2, s2 = other(*cur)
                cur = (c2, (s2 - 1) % 4)
            fid = len(faces)
            for d in darts:
                corner_face[d] = fid
            faces.append(Face(fid, tuple(darts), tuple(labels)))
    return faces, corner_face


def _connected(code) -> bool:
    n = len(code)
    owner: dict = {}
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c, t in enumerate(code):
        for label in t:
            if label in owner:
                parent[find(c)] = find(owner[label])
            else:
                owner[label] = c
    return len({find(i) for i in range(n)}) == 1


def _build_arcs(code, heads, tails, components) -> tuple[list[Arc], dict]:
    arcs_raw = []
    label_arc_raw = {}
    for ci, comp in enumerate(components):
        # rotate so that the walk starts right after an undercrossing
        starts = [i for i, lab in enumerate(comp) if tails[lab][1] in (0, 2)]
        if not starts:
            arcs_raw.append((tuple(comp), None, None, tuple(heads[l][0] for l in comp), ci))
            continue
        k = starts[0]
        seq = comp[k:] + comp[:k]
        cur: list[int] = []
        for lab in seq:
            if tails[lab][1] in (0, 2) and cur:
                arcs_raw.append(_close_arc(cur, heads, tails, ci))
                cur = []
            cur.append(lab)
        arcs_raw.append(_close_arc(cur, heads, tails, ci))
    # order: by component, starting from the arc holding the component's first label
    ordered = []
    for ci, comp in enumerate(components):
        mine = [a for a in arcs_raw if a[4] == ci]
        first = comp[0]
        idx = [i for i, a in enumerate(mine) if first in a[0]][0]
        ordered.extend(mine[idx:] + mine[:idx])
    arcs = []
    for aid, (labels, start, end, over, ci) in enumerate(ordered):
        arcs.append(Arc(aid, labels, start, end, over, ci))
        for lab in labels:
            label_arc_raw[lab] = aid
    return arcs, label_arc_raw


def _close_arc(labels, heads, tails, ci):
    start = tails[labels[0]][0]
    end = heads[labels[-1]][0]
    over = tuple(heads[l][0] for l in labels[:-1])
    return (tuple(labels), start, end, over, ci)


def _color_faces(faces, corner_face, code, tails, heads, unbounded, convention):
    n_f = len(faces)
    adj = [[] for _ in range(n_f)]
    for lab in heads:
        a, b = corner_face[tails[lab]], corner_face[heads[lab]]
        adj[a].append(b)
        adj[b].append(a)
    first = WHITE if convention == UNBOUNDED_WHITE else BLACK
    other = {WHITE: BLACK, BLACK: WHITE}
    col: list = [None] * n_f
    col[unbounded] = first
    q = deque([unbounded])
    while q:
        f = q.popleft()
        for g in adj[f]:
            if col[g] is None:
                col[g] = other[col[f]]
                q.append(g)
            elif col[g] == col[f]:
                raise NonPlanar("faces do not admit a checkerboard coloring")
    return tuple(col)


def _mu(code, corner_face, coloring) -> tuple[int, ...]:
    return tuple(1 if coloring[corner_face[(c, 0)]] == WHITE else -1 for c in range(len(code)))


def parse_diagram(
    code,
    *,
    mark_label: int | None = None,
    mark_crossing: int | None = None,
    coloring: str = UNBOUNDED_WHITE,
) -> PlanarDiagram:
    """Parse PD text (or a list of 4-tuples) into a traced, colored diagram."""
    tuples = _as_tuples(code)
    for t in tuples:
        if len(t) != 4:
            raise MalformedCode(f"crossing {t} does not have four entries")
    ends: dict = {}
    for c, t in enumerate(tuples):
        for s, label in enumerate(t):
            ends.setdefault(label, []).append((c, s))
    for label, e in ends.items():
        if len(e) != 2:
            raise MalformedCode(f"label {label} appears {len(e)} times")
    code_t = tuple(tuple(t) for t in tuples)
    if not _connected(code_t):
        raise Disconnected("diagram is not connected")
    heads, tails, comps = _orient(code_t, ends)
    comps = sorted(comps, key=min)
    comps = [_rotate_to_min(c) for c in comps]
    faces, corner_face = _trace_faces(code_t, ends)
    n = len(code_t)
    if len(faces) != n + 2:
        raise NonPlanar(f"{len(faces)} faces traced, expected {n + 2}")
    unbounded = max(faces, key=lambda f: (len(f), -min(f.labels))).fid
    if coloring not in COLORINGS:
        raise MalformedCode(f"unknown coloring convention {coloring!r}")
    colors = _color_faces(faces, corner_face, code_t, tails, heads, unbounded, coloring)
    arcs, label_arc = _build_arcs(code_t, heads, tails, comps)
    if mark_label is None:
        mark_label = min(heads)
    if mark_label not in heads:
        raise MalformedCode(f"marked edge {mark_label} is not a label of the code")
    if mark_crossing is None:
        end = arcs[label_arc[mark_label]].end
        mark_crossing = 0 if end is None else end
    if not 0 <= mark_crossing < n:
        raise MalformedCode(f"marked crossing {mark_crossing} out of range")
    return PlanarDiagram(
        code=code_t,
        tails=tails,
        heads=heads,
        components=tuple(tuple(c) for c in comps),
        faces=tuple(faces),
        corner_face=corner_face,
        unbounded_face=unbounded,
        arcs=tuple(arcs),
        label_arc=label_arc,
        convention=coloring,
        coloring=colors,
        mu=_mu(code_t, corner_face, colors),
        marked_label=mark_label,
        marked_crossing=mark_crossing,
    )


def _rotate_to_min(comp: list[int]) -> list[int]:
    k = comp.index(min(comp))
    return comp[k:] + comp[:k]


def from_dict(doc: dict) -> PlanarDiagram:
    """Rebuild a diagram from its JSON document and check every field."""
    d = parse_diagram(
        doc["code"],
        mark_label=doc.get("marked_label"),
        mark_crossing=doc.get("marked_crossing"),
        coloring=doc.get("convention", UNBOUNDED_WHITE),
    )
    mine = d.to_dict()
    for key, value in doc.items():
        if key in mine and mine[key] != value:
            raise MalformedCode(f"field {key!r} does not match the traced diagram")
    return d


def checkerboard_color(d: PlanarDiagram, convention: str = UNBOUNDED_WHITE) -> PlanarDiagram:
    if convention not in COLORINGS:
        raise MalformedCode(f"unknown coloring convention {convention!r}")
    if convention == d.convention:
        return d
    swap = {WHITE: BLACK, BLACK: WHITE}
    colors = tuple(swap[c] for c in d.coloring)
    return dataclasses.replace(
        d, convention=convention, coloring=colors, mu=_mu(d.code, d.corner_face, colors)
    )


def with_marks(d: PlanarDiagram, label: int | None = None, crossing: int | None = None) -> PlanarDiagram:
    """Move the marked point onto edge ``label`` and/or mark another crossing."""
    lab = d.marked_label if label is None else label
    if lab not in d.heads:
        raise MalformedCode(f"marked edge {lab} is not a label of the code")
    if crossing is None:
        if label is None:
            crossing = d.marked_crossing
        else:
            end = d.arcs[d.label_arc[lab]].end
            crossing = 0 if end is None else end
    if not 0 <= crossing < d.n:
        raise MalformedCode(f"marked crossing {crossing} out of range")
    return dataclasses.replace(d, marked_label=lab, marked_crossing=crossing)


def crossing_attributes(d: PlanarDiagram) -> tuple[CrossingAttributes, ...]:
    out = []
    for c in range(d.n):
        ui = d.under_in_slot(c)
        oi = d.over_in_slot(c)
        ux, uy = SLOT_DIRS[(ui + 2) % 4]
        ox, oy = SLOT_DIRS[(oi + 2) % 4]
        sign = ox * uy - oy * ux
        kb = d.black_quadrants(c)[0]
        same = d.is_incoming(c, kb) == d.is_incoming(c, (kb + 1) % 4)
        out.append(CrossingAttributes(d.mu[c], sign, "I" if same else "II"))
    return tuple(out)


def mu_of_diagram(d: PlanarDiagram) -> int:
    """Sum of incidence numbers over crossings of type II."""
    return sum(a.mu for a in crossing_attributes(d) if a.crossing_type == "II")


def writhe(d: PlanarDiagram) -> int:
    return sum(a.sign for a in crossing_attributes(d))


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over- and under-strands at every crossing (same planar picture)."""
    new = []
    for c, t in enumerate(d.code):
        k = d.over_in_slot(c)
        new.append(tuple(t[(k + i) % 4] for i in range(4)))
    return _reparse(d, new)


def reorient(d: PlanarDiagram, reversed_components: Iterable[int]) -> PlanarDiagram:
    """Reverse the orientation of the given components."""
    rev = set(reversed_components)
    labels_rev = {lab for i in rev for lab in d.components[i]}
    for i in rev:
        if all(d.tails[l][1] not in (0, 2) for l in d.components[i]):
            raise MalformedCode("cannot reverse a component that never passes under")
    new = []
    for t in d.code:
        if t[0] in labels_rev:
            new.append((t[2], t[3], t[0], t[1]))
        else:
            new.append(tuple(t))
    return _reparse(d, new)


def _reparse(d: PlanarDiagram, code: Sequence) -> PlanarDiagram:
    return parse_diagram(
        code, mark_label=d.marked_label, mark_crossing=d.marked_crossing, coloring=d.convention
    )


def pd_text(d: PlanarDiagram) -> str:
    return " ".join("X(" + ",".join(str(v) for v in t) + ")" for t in d.code)
