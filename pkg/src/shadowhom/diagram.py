"""Oriented link diagrams on the sphere, their colourings and chains.

A diagram is read from a PD code: each crossing lists four edge labels
counterclockwise, starting at the incoming under-edge.  Slots are numbered
0..3 in that order, so the under-strand runs 0 -> 2 and the over-strand
runs 1 -> 3 or 3 -> 1.

Two choices are not fixed by the combinatorics and live in
:class:`Convention`: on which side of an oriented arc its normal points
(the terminal region), and which crossing frame counts as positive.
``CALIBRATED`` is the only one of the four choices reproducing the
figure-eight shadow chain used in the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .chains import RACK, ZZ, Chain
from .errors import (EdgeCountMismatch, InconsistentShadow, InvalidColouring,
                     Malformed, NotPlanar, UnderStrandBroken)

LEFT, RIGHT = "left", "right"


@dataclass(frozen=True)
class Convention:
    """``normal``: side of an oriented arc holding its terminal region.
    ``frame``: +1 if a crossing whose over-strand crosses the under-strand
    from its right to its left is positive, -1 for the mirror choice."""

    normal: str = LEFT
    frame: int = 1

    def __post_init__(self):
        if self.normal not in (LEFT, RIGHT) or self.frame not in (1, -1):
            raise ValueError(f"bad convention {self}")


ALL_CONVENTIONS = tuple(Convention(n, f) for n in (LEFT, RIGHT) for f in (1, -1))
CALIBRATED = Convention(LEFT, 1)


@dataclass(frozen=True)
class Crossing:
    index: int
    slots: tuple        # edge labels counterclockwise, slot 0 = incoming under
    over_in: int        # slot (1 or 3) where the over-strand enters

    @property
    def over_out(self):
        return 4 - self.over_in

    @property
    def over_edges(self):
        return self.slots[self.over_in], self.slots[self.over_out]


class OrientedDiagram:
    """Parsed and validated PD diagram.

    ``components`` holds the edge cycles in orientation order; ``unknots``
    counts crossingless circles (only allowed when there are no crossings).
    """

    def __init__(self, components, crossings, unknots=0, arc_labels=None,
                 name=None):
        self.name = name
        self.components = [tuple(c) for c in components]
        self.unknots = unknots
        raw = [tuple(x) for x in crossings]
        if unknots and raw:
            raise Malformed("crossingless circles cannot be mixed with crossings")
        self.edges = [e for comp in self.components for e in comp]
        if len(set(self.edges)) != len(self.edges):
            raise Malformed("an edge label is repeated in the component cycles")
        edge_set = set(self.edges)
        count = {}
        for x in raw:
            if len(x) != 4:
                raise Malformed(f"crossing {x} does not have four edges")
            for e in x:
                count[e] = count.get(e, 0) + 1
        for e, k in count.items():
            if e not in edge_set:
                raise Malformed(f"edge {e} is not listed in any component")
            if k != 2:
                raise EdgeCountMismatch(f"edge {e} appears {k} times")
        if raw and set(count) != edge_set:
            missing = sorted(edge_set - set(count))
            raise EdgeCountMismatch(f"edges {missing} never meet a crossing")
        self._next = {}
        self._component_of = {}
        for ci, comp in enumerate(self.components):
            for i, e in enumerate(comp):
                self._next[e] = comp[(i + 1) % len(comp)]
                self._component_of[e] = ci
        self.crossings = self._orient(raw)
        self._build_ends()
        self._build_arcs(arc_labels)
        self.region_map = _faces(self)
        if raw:
            chi = len(self.crossings) - len(self.edges) + len(self.region_map.faces)
            if chi != 2:
                raise NotPlanar(f"V - E + F = {chi}, expected 2")

    # -- construction helpers --------------------------------------------

    def _orient(self, raw):
        """Resolve the over-strand direction at each crossing."""
        for x in raw:
            a, c = x[0], x[2]
            if self._next.get(a) != c:
                raise UnderStrandBroken(f"under-strand {a} -> {c} is not consecutive")
        # candidate directions per crossing; settle ambiguous ones by the
        # requirement that each edge has exactly one head and one tail
        options = []
        for x in raw:
            opts = []
            if self._next[x[1]] == x[3]:
                opts.append(1)
            if self._next[x[3]] == x[1]:
                opts.append(3)
            if not opts:
                raise UnderStrandBroken(f"over-strand at {x} is not consecutive")
            options.append(opts)

        def ends_ok(choice):
            heads, tails = {}, {}
            for x, oi in zip(raw, choice):
                for e, role in ((x[0], "h"), (x[2], "t"),
                                (x[oi], "h"), (x[4 - oi], "t")):
                    d = heads if role == "h" else tails
                    d[e] = d.get(e, 0) + 1
            return all(heads.get(e) == 1 and tails.get(e) == 1 for e in count_edges)

        count_edges = {e for x in raw for e in x}
        choice = [o[0] for o in options]
        ambiguous = [i for i, o in enumerate(options) if len(o) > 1]
        if not ends_ok(choice):
            found = None
            for mask in range(1 << len(ambiguous)):
                trial = list(choice)
                for k, i in enumerate(ambiguous):
                    trial[i] = options[i][(mask >> k) & 1]
                if ends_ok(trial):
                    found = trial
                    break
            if found is None:
                raise UnderStrandBroken("no consistent orientation of over-strands")
            choice = found
        return [Crossing(i, x, oi) for i, (x, oi) in enumerate(zip(raw, choice))]

    def _build_ends(self):
        # slot_role[(k, s)] = (edge, is_head)
        self.slot_role = {}
        self.head, self.tail = {}, {}
        for x in self.crossings:
            for s, e in enumerate(x.slots):
                is_head = s == 0 or s == x.over_in
                self.slot_role[(x.index, s)] = (e, is_head)
                (self.head if is_head else self.tail)[e] = (x.index, s)

    def _build_arcs(self, arc_labels):
        parent = {e: e for e in self.edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for x in self.crossings:
            b, d = find(x.slots[1]), find(x.slots[3])
            if b != d:
                parent[max(b, d)] = min(b, d)
        classes = {}
        for e in self.edges:
            classes.setdefault(find(e), []).append(e)
        ordered = sorted((sorted(v) for v in classes.values()), key=lambda v: v[0])
        if arc_labels:
            labels = {}
            for label, edge in arc_labels.items():
                labels[find(edge)] = label
            if len(set(labels.values())) != len(ordered) or len(labels) != len(ordered):
                raise Malformed("arc labels must name every Wirtinger arc once")
            self.arcs = {labels[find(v[0])]: tuple(v) for v in ordered}
            self.arc_labels = dict(arc_labels)
        else:
            self.arcs = {i + 1: tuple(v) for i, v in enumerate(ordered)}
            self.arc_labels = None
        self.arc_of = {e: a for a, es in self.arcs.items() for e in es}

    # -- queries ----------------------------------------------------------

    @property
    def num_edges(self):
        return len(self.edges)

    def next_edge(self, e):
        return self._next[e]

    def component_of(self, e):
        return self._component_of[e]

    def over_arc(self, p, convention=CALIBRATED):
        return self.arc_of[self.crossings[p].slots[1]]

    def under_roles(self, p, convention=CALIBRATED):
        """``(u_ini edge, u_ter edge)`` at crossing ``p``.

        The terminal under-edge lies on the normal side of the over-strand.
        """
        x = self.crossings[p]
        a, c = x.slots[0], x.slots[2]
        # over 3 -> 1 runs parallel to the frame's +x axis with slot 2 on its left
        c_on_left = x.over_in == 3
        if c_on_left == (convention.normal == LEFT):
            return a, c
        return c, a

    def sign(self, p, convention=CALIBRATED):
        return crossing_sign(self, p, convention)

    def initial_corner(self, p, convention=CALIBRATED):
        """Corner ``s`` (between slots s and s+1) holding ``r^ini_p``."""
        x = self.crossings[p]
        if convention.normal == LEFT:
            return 1 if x.over_in == 1 else 0
        return 3 if x.over_in == 1 else 2

    def __repr__(self):
        label = self.name or "diagram"
        return (f"<OrientedDiagram {label}: {len(self.crossings)} crossings, "
                f"{len(self.components) + self.unknots} components>")


def crossing_sign(D, p, convention=CALIBRATED):
    x = D.crossings[p]
    # over 3 -> 1 with under 0 -> 2 is the positively oriented frame
    base = 1 if x.over_in == 3 else -1
    return base * convention.frame


# -- regions ----------------------------------------------------------------

@dataclass
class RegionMap:
    """Faces of the diagram.

    ``faces[r]`` is the cyclic list of darts ``(edge, forward)`` bounding
    region ``r`` with the region on the dart's left.  ``left[e]`` and
    ``right[e]`` are the regions beside edge ``e`` relative to its
    orientation; ``corners[p][s]`` is the region between slots s and s+1.
    """

    faces: list
    left: dict
    right: dict
    corners: dict = field(default_factory=dict)
    base_region: int = 0

    def terminal(self, e, convention=CALIBRATED):
        return self.left[e] if convention.normal == LEFT else self.right[e]

    def initial(self, e, convention=CALIBRATED):
        return self.right[e] if convention.normal == LEFT else self.left[e]

    def adjacency(self):
        """``(edge, left_region, right_region)`` for every edge."""
        return [(e, self.left[e], self.right[e]) for e in sorted(self.left)]


def _faces(D):
    if not D.crossings:
        # k circles side by side: region 0 outside, region i inside circle i
        left, right, faces = {}, {}, [[]]
        for i, e in enumerate(D.edges):
            faces[0].append((e, False))
            faces.append([(e, True)])
            left[e], right[e] = i + 1, 0
        rm = RegionMap(faces, left, right)
        rm.base_region = right[_first_edge(D)] if D.edges else 0
        return rm

    def next_dart(dart):
        e, forward = dart
        k, s = D.head[e] if forward else D.tail[e]
        s2 = (s - 1) % 4
        e2, is_head = D.slot_role[(k, s2)]
        return (e2, not is_head)

    darts = [(e, f) for e in D.edges for f in (True, False)]
    seen = {}
    cycles = []
    for d in sorted(darts, key=lambda d: (d[0], not d[1])):
        if d in seen:
            continue
        cyc = []
        cur = d
        while cur not in seen:
            seen[cur] = len(cycles)
            cyc.append(cur)
            cur = next_dart(cur)
        if cur != d:
            raise Malformed("face traversal did not close up")
        cycles.append(cyc)
    left = {e: seen[(e, True)] for e in D.edges}
    right = {e: seen[(e, False)] for e in D.edges}
    corners = {}
    for x in D.crossings:
        row = []
        for s in range(4):
            # dart arriving at slot s+1 has the corner (s, s+1) on its left
            e, is_head = D.slot_role[(x.index, (s + 1) % 4)]
            row.append(seen[(e, is_head)])
        corners[x.index] = tuple(row)
    rm = RegionMap(cycles, left, right, corners)
    rm.base_region = right[_first_edge(D)]
    return rm


def _first_edge(D):
    return 1 if 1 in D._next else D.edges[0]


def regions(D, base_region=None):
    rm = D.region_map
    if base_region is None:
        return rm
    if not 0 <= base_region < len(rm.faces):
        raise ValueError(f"no region {base_region}")
    return RegionMap(rm.faces, rm.left, rm.right, rm.corners, base_region)


def initial_region(D, p, convention=CALIBRATED):
    return D.region_map.corners[p][D.initial_corner(p, convention)]


# -- parsing ------------------------------------------------------------------

_COMP = re.compile(r"\[([^\]]*)\]")


def parse_pd(text, name=None):
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise Malformed("empty diagram file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "pd":
        raise Malformed(f"bad header {lines[0]!r}")
    try:
        n_edges = int(head[1])
    except ValueError:
        raise Malformed(f"bad edge count {head[1]!r}") from None
    body = lines[1:]
    if body and all(ln == "unknot" for ln in body):
        k = len(body)
        if n_edges != k:
            raise EdgeCountMismatch(f"header says {n_edges} edges, found {k} circles")
        return OrientedDiagram([(i + 1,) for i in range(k)], [], unknots=k,
                               name=name)
    components, crossings, arc_labels = None, [], None
    for ln in body:
        if ln.startswith("components:"):
            components = []
            for grp in _COMP.findall(ln):
                try:
                    components.append([int(v) for v in grp.replace(",", " ").split()])
                except ValueError:
                    raise Malformed(f"bad component list {grp!r}") from None
        elif ln.startswith("arcs:"):
            arc_labels = {}
            for item in ln[5:].split():
                label, _, edge = item.partition("=")
                arc_labels[int(label)] = int(edge)
        elif ln.startswith("X"):
            parts = ln.split()
            if len(parts) != 5:
                raise Malformed(f"bad crossing line {ln!r}")
            try:
                crossings.append(tuple(int(v) for v in parts[1:]))
            except ValueError:
                raise Malformed(f"bad crossing line {ln!r}") from None
        else:
            raise Malformed(f"unrecognised line {ln!r}")
    if components is None:
        raise Malformed("missing components line")
    total = sum(len(c) for c in components)
    if total != n_edges or 2 * len(crossings) != n_edges:
        raise EdgeCountMismatch(
            f"header {n_edges} edges, components list {total}, "
            f"{len(crossings)} crossings")
    return OrientedDiagram(components, crossings, arc_labels=arc_labels, name=name)


def read_pd(path):
    path = Path(path)
    return parse_pd(path.read_text(), name=path.stem)


def format_pd(D):
    if D.unknots:
        return f"pd {D.unknots}\n" + "unknot\n" * D.unknots
    lines = [f"pd {D.num_edges}"]
    lines.append("components: " + ";".join(
        "[" + ",".join(map(str, c)) + "]" for c in D.components))
    if D.arc_labels:
        lines.append("arcs: " + " ".join(f"{a}={e}" for a, e in sorted(D.arc_labels.items())))
    for x in D.crossings:
        lines.append("X " + " ".join(map(str, x.slots)))
    return "\n".join(lines) + "\n"


# -- colourings -----------------------------------------------------------------

@dataclass(frozen=True)
class Colouring:
    """Edge colours of a diagram in the quandle ``target``."""

    target: object
    edge_colours: tuple        # ((edge, colour), ...) sorted by edge
    arc_colours: tuple = ()    # ((arc, colour), ...) sorted by arc

    @property
    def arc_map(self):
        return dict(self.arc_colours)

    def __getitem__(self, e):
        return dict(self.edge_colours)[e]

    def as_dict(self):
        return dict(self.edge_colours)


@dataclass(frozen=True)
class ShadowColouring:
    colouring: Colouring
    region_colours: tuple      # colour of region r at index r

    @property
    def target(self):
        return self.colouring.target


def crossing_relations(D, convention=CALIBRATED):
    """``(u_ini arc, over arc, u_ter arc)`` for each crossing, in order."""
    out = []
    for x in D.crossings:
        ui, ut = D.under_roles(x.index, convention)
        out.append((D.arc_of[ui], D.arc_of[x.slots[1]], D.arc_of[ut]))
    return out


def is_colouring(D, X, edge_colours, convention=CALIBRATED):
    cols = dict(edge_colours)
    for x in D.crossings:
        b, d = x.slots[1], x.slots[3]
        if cols[b] != cols[d]:
            return False
        ui, ut = D.under_roles(x.index, convention)
        if X.op[cols[ui]][cols[b]] != cols[ut]:
            return False
    return True


def enumerate_colourings(D, X, convention=CALIBRATED):
    """All ``X``-colourings, by backtracking over Wirtinger arcs.

    Arcs are assigned in increasing least-edge order, colours in increasing
    order; each assignment is followed by propagation through the crossing
    relations.
    """
    rels = crossing_relations(D, convention)
    arcs = sorted(D.arcs, key=lambda a: D.arcs[a][0])
    results = []

    def propagate(assign):
        changed = True
        while changed:
            changed = False
            for ui, o, ut in rels:
                if o not in assign:
                    continue
                c = assign[o]
                if ui in assign:
                    v = X.op[assign[ui]][c]
                    if ut in assign:
                        if assign[ut] != v:
                            return False
                    else:
                        assign[ut] = v
                        changed = True
                elif ut in assign:
                    assign[ui] = X.inv_op[assign[ut]][c]
                    changed = True
        return True

    def search(assign):
        free = next((a for a in arcs if a not in assign), None)
        if free is None:
            results.append(dict(assign))
            return
        for v in range(X.size):
            trial = dict(assign)
            trial[free] = v
            if propagate(trial):
                search(trial)

    search({})
    out = []
    for arc_col in results:
        cols = tuple(sorted((e, arc_col[D.arc_of[e]]) for e in D.edges))
        out.append(Colouring(X, cols, tuple(sorted(arc_col.items()))))
    out.sort(key=lambda c: tuple(v for _, v in c.edge_colours))
    return out


def colouring_from_arcs(D, X, arc_colours, convention=CALIBRATED):
    cols = tuple(sorted((e, arc_colours[D.arc_of[e]]) for e in D.edges))
    if not is_colouring(D, X, cols, convention):
        raise InvalidColouring("arc colours violate a crossing relation")
    return Colouring(X, cols, tuple(sorted(arc_colours.items())))


def colouring_from_edges(D, X, edge_colours, convention=CALIBRATED):
    cols = tuple(sorted(dict(edge_colours).items()))
    if set(dict(cols)) != set(D.edges):
        raise InvalidColouring("every edge needs a colour")
    if not is_colouring(D, X, cols, convention):
        raise InvalidColouring("edge colours violate a crossing relation")
    d = dict(cols)
    arcs = tuple(sorted((a, d[es[0]]) for a, es in D.arcs.items()))
    return Colouring(X, cols, arcs)


def shadow_extend(D, C, base_colour, base_region=None, convention=CALIBRATED):
    """Extend ``C`` by region colours with ``base_colour`` on the base region."""
    X = C.target
    rm = D.region_map
    base = rm.base_region if base_region is None else base_region
    colours = [None] * len(rm.faces)
    colours[base] = base_colour
    _propagate_regions(D, colours, C.as_dict(),
                       lambda w, x: X.op[w][x], lambda w, x: X.inv_op[w][x],
                       convention)
    return ShadowColouring(C, tuple(colours))


def _propagate_regions(D, colours, edge_col, act, act_inv, convention,
                       equal=lambda a, b: a == b):
    rm = D.region_map
    steps = []
    for e, l, r in rm.adjacency():
        ter, ini = (l, r) if convention.normal == LEFT else (r, l)
        steps.append((e, ini, ter))
    # breadth-first over region adjacency, then verify every remaining edge
    frontier = [i for i, c in enumerate(colours) if c is not None]
    while frontier:
        nxt = []
        for reg in frontier:
            for e, ini, ter in steps:
                x = edge_col[e]
                if ini == reg and colours[ter] is None:
                    colours[ter] = act(colours[ini], x)
                    nxt.append(ter)
                elif ter == reg and colours[ini] is None:
                    colours[ini] = act_inv(colours[ter], x)
                    nxt.append(ini)
        frontier = nxt
    if any(c is None for c in colours):
        raise InconsistentShadow("region adjacency graph is disconnected")
    for e, ini, ter in steps:
        if not equal(act(colours[ini], edge_col[e]), colours[ter]):
            raise InconsistentShadow(
                f"(SC) fails across edge {e}: regions {ini} -> {ter}")


def all_shadow_colourings(D, X, convention=CALIBRATED):
    out = []
    for C in enumerate_colourings(D, X, convention):
        for a in range(X.size):
            out.append(shadow_extend(D, C, a, convention=convention))
    return out


# -- chains --------------------------------------------------------------------

def diagram_chain(D, C, convention=CALIBRATED):
    """``Σ_p ε_p (C(u_ini), C(o))`` -- a rack 2-cycle."""
    cols = C.as_dict()
    terms = []
    for x in D.crossings:
        ui, _ = D.under_roles(x.index, convention)
        terms.append(((cols[ui], cols[x.slots[1]]), crossing_sign(D, x.index, convention)))
    return Chain(2, terms, RACK, ZZ)


def shadow_chain(D, S, convention=CALIBRATED):
    """``Σ_p ε_p (S(r_ini), C(u_ini), C(o))`` -- a rack 3-cycle."""
    cols = S.colouring.as_dict()
    terms = []
    for x in D.crossings:
        ui, _ = D.under_roles(x.index, convention)
        r = initial_region(D, x.index, convention)
        terms.append(((S.region_colours[r], cols[ui], cols[x.slots[1]]),
                      crossing_sign(D, x.index, convention)))
    return Chain(3, terms, RACK, ZZ)


def format_colouring(D, C):
    return "".join(f"edge {e} -> {v}\n" for e, v in C.edge_colours)


def format_shadow(D, S):
    out = format_colouring(D, S.colouring)
    out += "".join(f"region {r} -> {v}\n" for r, v in enumerate(S.region_colours))
    return out
