"""Finite racks and quandles given by operation tables.

Elements are the integers ``0..n-1``.  ``op[a][b]`` is ``a ◁ b`` and the
inverse operation ``a ◀ b`` is derived from R1, never read from input.

>>> Z3 = dihedral(3)
>>> Z3.op
((0, 2, 1), (2, 1, 0), (1, 0, 2))
>>> Z3.apply(0, 1), Z3.apply(2, 1, -1)
(2, 0)
>>> orbits(dihedral(4))
((0, 2), (1, 3))
"""

from __future__ import annotations

from itertools import product
from pathlib import Path

from .errors import (AxiomViolation, IndexOutOfRange, MalformedTable,
                     NotAGroup)


class Quandle:
    """A validated finite rack; ``is_quandle`` records whether axiom Q holds."""

    __slots__ = ("size", "op", "inv_op", "is_quandle", "name")

    def __init__(self, table, name=None):
        op = _as_square(table)
        n = len(op)
        inv = [[None] * n for _ in range(n)]
        # R1: every column b -> (a |-> a ◁ b) must be a permutation
        for b in range(n):
            seen = {}
            for a in range(n):
                c = op[a][b]
                if c in seen:
                    raise AxiomViolation(
                        "R1", (seen[c], a, b),
                        f"column {b} not a permutation")
                seen[c] = a
                inv[c][b] = a
        for a, b, c in product(range(n), repeat=3):
            if op[op[a][b]][c] != op[op[a][c]][op[b][c]]:
                raise AxiomViolation("R2", (a, b, c))
        self.size = n
        self.op = tuple(tuple(row) for row in op)
        self.inv_op = tuple(tuple(row) for row in inv)
        self.is_quandle = all(op[a][a] == a for a in range(n))
        self.name = name

    def apply(self, a, b, e=1):
        """Return ``a ◁^e b``."""
        n = self.size
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"({a}, {b}) outside 0..{n - 1}")
        if e == 1:
            return self.op[a][b]
        if e == -1:
            return self.inv_op[a][b]
        raise ValueError(f"exponent must be +1 or -1, got {e}")

    def elements(self):
        return range(self.size)

    def relabel(self, perm):
        """The isomorphic rack obtained by renaming ``a`` to ``perm[a]``."""
        n = self.size
        table = [[0] * n for _ in range(n)]
        for a, b in product(range(n), repeat=2):
            table[perm[a]][perm[b]] = perm[self.op[a][b]]
        return Quandle(table)

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.op == other.op

    def __hash__(self):
        return hash(self.op)

    def __repr__(self):
        label = self.name or f"table{list(map(list, self.op))}"
        kind = "Quandle" if self.is_quandle else "Rack"
        return f"<{kind} {label} of order {self.size}>"


def _as_square(table):
    try:
        rows = [list(r) for r in table]
    except TypeError:
        raise MalformedTable("table must be a sequence of rows") from None
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has {len(row)} entries, expected {n}")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise MalformedTable(f"non-integer entry {v!r} in row {i}")
            if not 0 <= v < n:
                raise MalformedTable(f"entry {v} in row {i} out of range 0..{n - 1}")
    return rows


def dihedral(p):
    if p < 1:
        raise ValueError("dihedral quandle needs p >= 1")
    return Quandle([[(2 * b - a) % p for b in range(p)] for a in range(p)],
                   name=f"Z{p}")


def trivial(n):
    if n < 1:
        raise ValueError("trivial quandle needs n >= 1")
    return Quandle([[a] * n for a in range(n)], name=f"T{n}")


def alexander(n, t):
    """Alexander quandle on Z/n: ``a ◁ b = t·a + (1 - t)·b`` with ``t`` a unit."""
    from math import gcd
    if n < 1 or gcd(t, n) != 1:
        raise ValueError(f"t = {t} is not a unit mod {n}")
    return Quandle([[(t * a + (1 - t) * b) % n for b in range(n)]
                    for a in range(n)], name=f"Alex{n}t{t % n}")


def conjugation(mult, name=None):
    """Conjugation quandle ``g ◁ h = h^-1 g h`` of a group multiplication table."""
    mult = _as_square(mult)
    n = len(mult)
    units = [e for e in range(n)
             if all(mult[e][g] == g and mult[g][e] == g for g in range(n))]
    if not units:
        raise NotAGroup("no identity element")
    e = units[0]
    inv = []
    for g in range(n):
        hs = [h for h in range(n) if mult[g][h] == e and mult[h][g] == e]
        if not hs:
            raise NotAGroup(f"element {g} has no inverse")
        inv.append(hs[0])
    for a, b, c in product(range(n), repeat=3):
        if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
            raise NotAGroup(f"not associative at {(a, b, c)}")
    table = [[mult[mult[inv[h]][g]][h] for h in range(n)] for g in range(n)]
    return Quandle(table, name=name)


def make_quandle(kind, *args, **kwargs):
    """Dispatch on ``kind`` in {'dihedral', 'trivial', 'conjugation',
    'alexander', 'table'}."""
    builders = {
        "dihedral": dihedral,
        "trivial": trivial,
        "conjugation": conjugation,
        "alexander": alexander,
        "table": Quandle,
    }
    try:
        build = builders[kind]
    except KeyError:
        raise ValueError(f"unknown quandle kind {kind!r}") from None
    return build(*args, **kwargs)


def orbits(Q):
    """Connected components under ``a -> a ◁^{±1} b``, sorted by least element."""
    parent = list(range(Q.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in product(range(Q.size), repeat=2):
        # the inverse edges a ◀ b give the same undirected graph
        ra, rc = find(a), find(Q.op[a][b])
        if ra != rc:
            parent[max(ra, rc)] = min(ra, rc)
    classes = {}
    for a in range(Q.size):
        classes.setdefault(find(a), []).append(a)
    return tuple(tuple(c) for c in sorted(classes.values()))


def orbit_of(Q, a):
    for cls in orbits(Q):
        if a in cls:
            return cls
    raise IndexOutOfRange(a)


def is_connected(Q):
    return len(orbits(Q)) == 1


def check_hom(src, dst, f, report=False):
    """Check ``f(a ◁ b) = f(a) ◁ f(b)`` for all pairs.

    With ``report=True`` returns ``(ok, witness)`` where ``witness`` is the
    first failing pair or ``None``.
    """
    f = list(f)
    if len(f) != src.size or any(not 0 <= v < dst.size for v in f):
        raise ValueError("f must map every source element into the target")
    for a, b in product(range(src.size), repeat=2):
        if f[src.op[a][b]] != dst.op[f[a]][f[b]]:
            return (False, (a, b)) if report else False
    return (True, None) if report else True


def read_quandle(path):
    path = Path(path)
    return parse_quandle(path.read_text(), name=path.stem)


def parse_quandle(text, name=None):
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedTable("empty quandle file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "quandle":
        raise MalformedTable(f"bad header {lines[0]!r}")
    try:
        n = int(head[1])
        rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    except ValueError as err:
        raise MalformedTable(str(err)) from None
    if len(rows) != n:
        raise MalformedTable(f"expected {n} rows, found {len(rows)}")
    return Quandle(rows, name=name)


def format_quandle(Q):
    out = [f"quandle {Q.size}"]
    out += [" ".join(map(str, row)) for row in Q.op]
    return "\n".join(out) + "\n"
