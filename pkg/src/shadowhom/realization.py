"""Closed surfaces carrying a prescribed rack 3-cycle.

Each term ``ε·(α, x, y)`` becomes a unit square crossed by a vertical line
coloured ``x`` and a horizontal line coloured ``y`` passing over it, with
the origin's initial region coloured ``α``.  A side of the square is a
shadow-coloured 1-diagram whose chain is

    left   -ε (α◁x, y)        right  +ε (α, y)
    bottom -ε (α, x)          top    +ε (α◁y, x◁y)

and the four chains sum to ``ε ∂(α, x, y)``.  Sides with opposite chains
are glued; ``∂c = 0`` is exactly the statement that they pair up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import RACK, ZZ, Chain, boundary
from .errors import (NonIntegerCoefficients, NotACycle,
                     OrientationInconsistent)

SIDES = ("bottom", "right", "top", "left")

# corners: 0 = (0,0), 1 = (1,0), 2 = (1,1), 3 = (0,1); each side runs from
# its first corner to its second along the coordinate direction
_ENDS = {"bottom": (0, 1), "right": (1, 2), "top": (3, 2), "left": (0, 3)}
# direction of the crossing line's normal, relative to the side's direction
_NORMAL = {"bottom": -1, "top": -1, "left": 1, "right": 1}
# boundary orientation of a positive square relative to the side's direction
_BOUNDARY = {"bottom": 1, "right": 1, "top": -1, "left": -1}


@dataclass(frozen=True)
class UnitSquare:
    id: int
    sign: int
    tuple: tuple      # (α, x, y)

    def face_chain(self, Q, side):
        """``(coefficient, (shadow, colour))`` of the given side."""
        a, x, y = self.tuple
        op = Q.op
        e = self.sign
        if side == "left":
            return -e, (op[a][x], y)
        if side == "right":
            return e, (a, y)
        if side == "bottom":
            return -e, (a, x)
        if side == "top":
            return e, (op[a][y], op[x][y])
        raise ValueError(side)

    def faces(self, Q):
        return Chain(2, [(t, k) for k, t in (self.face_chain(Q, s) for s in SIDES)],
                     RACK, ZZ)


@dataclass
class SurfaceDiagram:
    squares: list
    gluings: list      # ((id, side), (id, side)) pairs
    quandle: object = None

    def glued_to(self):
        out = {}
        for f, g in self.gluings:
            out[f] = g
            out[g] = f
        return out


def _square_list(c):
    if c.ring != ZZ:
        raise NonIntegerCoefficients(f"coefficients live in {c.ring}")
    if c.degree != 3:
        raise ValueError("realization takes a 3-chain")
    squares = []
    for t, k in c.items():
        for _ in range(abs(k)):
            squares.append(UnitSquare(len(squares), 1 if k > 0 else -1, tuple(t)))
    return squares


def realize(Q, c):
    """Glue signed unit squares along sides with opposite chains."""
    rack_c = Chain(c.degree, list(c.items()), RACK, c.ring)
    squares = _square_list(rack_c)
    d = boundary(Q, rack_c)
    if not d.is_zero():
        raise NotACycle(d)
    pos, neg = {}, {}
    for sq in squares:
        for side in SIDES:
            k, key = sq.face_chain(Q, side)
            (pos if k > 0 else neg).setdefault(key, []).append((sq.id, side))
    gluings = []
    for key in sorted(set(pos) | set(neg)):
        a, b = sorted(pos.get(key, [])), sorted(neg.get(key, []))
        if len(a) != len(b):
            raise AssertionError(f"unbalanced sides for {key} although ∂c = 0")
        gluings.extend(zip(a, b))
    S = SurfaceDiagram(squares, gluings, Q)
    _check_orientation(S)
    return S


def chain_of(S):
    return Chain(3, [(sq.tuple, sq.sign) for sq in S.squares], RACK, ZZ)


def _check_orientation(S):
    sign = {sq.id: sq.sign for sq in S.squares}
    for (i, s), (j, t) in S.gluings:
        flip = _NORMAL[s] * _NORMAL[t]
        if sign[i] * _BOUNDARY[s] * flip != -sign[j] * _BOUNDARY[t]:
            raise OrientationInconsistent(f"gluing {i}.{s} ~ {j}.{t}")


def _corner_map(s, t):
    """Corner pairs identified when side ``s`` is glued to side ``t``."""
    a0, a1 = _ENDS[s]
    b0, b1 = _ENDS[t]
    if _NORMAL[s] == _NORMAL[t]:
        return ((a0, b0), (a1, b1))
    return ((a0, b1), (a1, b0))


@dataclass(frozen=True)
class SurfaceStats:
    components: int
    euler: tuple       # χ per component, components ordered by least square id
    genus: tuple
    vertices: int
    edges: int
    faces: int


def surface_stats(S):
    _check_orientation(S)
    parent = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    for sq in S.squares:
        for k in range(4):
            find((sq.id, k))
        find(("sq", sq.id))
    for (i, s), (j, t) in S.gluings:
        for a, b in _corner_map(s, t):
            union((i, a), (j, b))
        union(("sq", i), ("sq", j))
    comp_of = {sq.id: find(("sq", sq.id)) for sq in S.squares}
    comps = sorted(set(comp_of.values()))
    verts = {}
    for sq in S.squares:
        for k in range(4):
            verts.setdefault(comp_of[sq.id], set()).add(find((sq.id, k)))
    euler, genus = [], []
    for comp in comps:
        n_sq = sum(1 for v in comp_of.values() if v == comp)
        chi = len(verts[comp]) - 2 * n_sq + n_sq
        if chi % 2:
            raise OrientationInconsistent(f"odd Euler characteristic {chi}")
        euler.append(chi)
        genus.append((2 - chi) // 2)
    n = len(S.squares)
    return SurfaceStats(len(comps), tuple(euler), tuple(genus),
                        sum(len(v) for v in verts.values()), 2 * n, n)


def format_surface(S):
    lines = [f"squares: {len(S.squares)}"]
    for sq in S.squares:
        lines.append(f"square {sq.id} {'+' if sq.sign > 0 else '-'} "
                     f"({','.join(map(str, sq.tuple))})")
    for (i, s), (j, t) in S.gluings:
        lines.append(f"face {i}.{s} ~ {j}.{t}")
    st = surface_stats(S)
    lines.append(f"components: {st.components}")
    lines.append(f"V E F: {st.vertices} {st.edges} {st.faces}")
    for k, (chi, g) in enumerate(zip(st.euler, st.genus)):
        lines.append(f"component {k}: chi {chi} genus {g}")
    return "\n".join(lines) + "\n"
