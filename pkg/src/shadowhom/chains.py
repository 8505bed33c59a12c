"""Rack and quandle chains with exact coefficients.

The boundary map uses the sign convention

    ∂_n(x_1..x_n) = Σ_i (-1)^(n-i) {(x_1◁x_i, .., x_{i-1}◁x_i, x_{i+1}, .., x_n)
                                   - (x_1, .., x_{i-1}, x_{i+1}, .., x_n)}

for n >= 2, and ``∂_1(x) = 1`` where ``C_0 = A`` is spanned by the empty
tuple ``()``.  Quandle chains are stored by their non-degenerate
representatives: a tuple with two equal neighbours is dropped on insertion.
"""

from __future__ import annotations

import re
from itertools import product

from .errors import (DegreeMismatch, DegreeZero, ElementOutOfRange,
                     NotAQuandle, RingMismatch, ShadowHomError)

RACK = "rack"
QUANDLE = "quandle"
DEGENERATE = "degenerate"
THEORIES = (RACK, QUANDLE, DEGENERATE)


class Ring:
    """The integers (``modulus=None``) or the integers modulo ``m >= 2``."""

    __slots__ = ("modulus",)

    def __init__(self, modulus=None):
        if modulus is not None and modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus

    def reduce(self, v):
        return v if self.modulus is None else v % self.modulus

    def __eq__(self, other):
        return isinstance(other, Ring) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Ring", self.modulus))

    def __str__(self):
        return "z" if self.modulus is None else f"z{self.modulus}"

    __repr__ = __str__


ZZ = Ring()


def parse_ring(text):
    text = text.strip().lower()
    if text == "z":
        return ZZ
    m = re.fullmatch(r"z(\d+)", text)
    if not m:
        raise ValueError(f"ring must be 'z' or 'z<m>', got {text!r}")
    return Ring(int(m.group(1)))


def is_degenerate(t):
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def _check_theory(theory, allowed=THEORIES):
    if theory not in allowed:
        raise ValueError(f"theory must be one of {allowed}, got {theory!r}")


class Chain:
    """A finite formal sum of ``degree``-tuples with nonzero coefficients.

    Entries are quandle elements (ints) for concrete chains, or
    :class:`~shadowhom.wirtinger.ArcWord` values for symbolic ones.
    """

    __slots__ = ("degree", "theory", "ring", "_terms")

    def __init__(self, degree, terms=(), theory=RACK, ring=ZZ):
        _check_theory(theory, (RACK, QUANDLE))
        if degree < 0:
            raise ValueError("degree must be non-negative")
        self.degree = degree
        self.theory = theory
        self.ring = ring
        acc = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for t, c in items:
            t = tuple(t)
            if len(t) != degree:
                raise DegreeMismatch(f"tuple {t} in a degree-{degree} chain")
            if theory == QUANDLE and is_degenerate(t):
                continue
            acc[t] = acc.get(t, 0) + c
        self._terms = {}
        for t in sorted(acc):
            c = ring.reduce(acc[t])
            if c:
                self._terms[t] = c

    @classmethod
    def gen(cls, *entries, coeff=1, theory=RACK, ring=ZZ):
        return cls(len(entries), [(entries, coeff)], theory, ring)

    def like(self, terms, degree=None, theory=None):
        return Chain(self.degree if degree is None else degree, terms,
                     theory or self.theory, self.ring)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, t):
        return self._terms.get(tuple(t), 0)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def _compatible(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.degree != other.degree:
            raise DegreeMismatch(f"{self.degree} vs {other.degree}")
        return QUANDLE if QUANDLE in (self.theory, other.theory) else RACK

    def __add__(self, other):
        theory = self._compatible(other)
        if theory is NotImplemented:
            return NotImplemented
        return self.like(list(self.items()) + list(other.items()), theory=theory)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.like([(t, -c) for t, c in self.items()])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return self.like([(t, k * c) for t, c in self.items()])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (self.degree == other.degree and self.ring == other.ring
                and self.theory == other.theory and self._terms == other._terms)

    def __hash__(self):
        return hash((self.degree, self.theory, tuple(self._terms.items())))

    def __repr__(self):
        return f"Chain({self.degree}, {self.theory}, {self.ring}: {format_terms(self)})"

    def map_entries(self, f, theory=None):
        """Apply ``f`` to every tuple entry, summing collisions."""
        return self.like([(tuple(f(x) for x in t), c) for t, c in self.items()],
                         theory=theory)


def zero(degree, theory=RACK, ring=ZZ):
    return Chain(degree, (), theory, ring)


def format_terms(c):
    if not c:
        return "0"
    parts = []
    for t, k in c.items():
        tup = "(" + ",".join(str(x) for x in t) + ")"
        sign = "-" if k < 0 else "+"
        mag = "" if abs(k) == 1 else f"{abs(k)}*"
        parts.append(f"{sign} {mag}{tup}")
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class Cochain:
    """A function on ``degree``-tuples; unlisted tuples have value 0.

    Quandle cochains vanish on degenerate tuples by construction.
    """

    __slots__ = ("degree", "theory", "ring", "_values")

    def __init__(self, degree, values=(), theory=RACK, ring=ZZ):
        _check_theory(theory)
        self.degree = degree
        self.theory = theory
        self.ring = ring
        vals = {}
        items = values.items() if isinstance(values, dict) else values
        for t, v in items:
            t = tuple(t)
            if len(t) != degree:
                raise DegreeMismatch(f"tuple {t} in a degree-{degree} cochain")
            v = ring.reduce(v)
            if not v:
                continue
            if theory == QUANDLE and is_degenerate(t):
                raise ShadowHomError(
                    f"quandle cochain is nonzero on degenerate tuple {t}")
            if theory == DEGENERATE and not is_degenerate(t):
                raise ShadowHomError(
                    f"degenerate cochain is nonzero on non-degenerate {t}")
            vals[t] = vals.get(t, 0) + v
        self._values = {t: ring.reduce(v) for t, v in sorted(vals.items())
                        if ring.reduce(v)}

    def __call__(self, t):
        return self._values.get(tuple(t), 0)

    @property
    def values(self):
        return dict(self._values)

    def items(self):
        return self._values.items()

    def is_zero(self):
        return not self._values

    def _binop(self, other, sign):
        if self.ring != other.ring or self.degree != other.degree:
            raise RingMismatch("cochains live in different groups")
        vals = dict(self._values)
        for t, v in other.items():
            vals[t] = vals.get(t, 0) + sign * v
        return Cochain(self.degree, vals, self.theory, self.ring)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __mul__(self, k):
        return Cochain(self.degree, {t: k * v for t, v in self.items()},
                       self.theory, self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.ring == other.ring and self._values == other._values)

    def __hash__(self):
        return hash((self.degree, tuple(self._values.items())))

    def __repr__(self):
        body = ", ".join(f"{t}: {v}" for t, v in self.items())
        return f"Cochain({self.degree}, {self.theory}, {self.ring}: {{{body}}})"


def indicator(t, theory=RACK, ring=ZZ):
    return Cochain(len(t), {tuple(t): 1}, theory, ring)


def _check_entries(Q, t):
    for x in t:
        if not (isinstance(x, int) and 0 <= x < Q.size):
            raise ElementOutOfRange(f"{x!r} is not an element of {Q!r}")


def boundary_terms(Q, t):
    """Signed terms of ``∂(t)`` for a single rack generator ``t``."""
    n = len(t)
    if n == 0:
        raise DegreeZero("no boundary on degree 0")
    if n == 1:
        return [((), 1)]
    op = Q.op
    out = []
    for i in range(n):
        # 0-based i corresponds to the formula's i+1, so the sign is (-1)^(n-1-i)
        sign = -1 if (n - 1 - i) % 2 else 1
        xi = t[i]
        head = tuple(op[x][xi] for x in t[:i])
        tail = t[i + 1:]
        out.append((head + tail, sign))
        out.append((t[:i] + tail, -sign))
    return out


def boundary(Q, c):
    if c.degree == 0:
        raise DegreeZero("no boundary on degree 0")
    terms = []
    for t, k in c.items():
        _check_entries(Q, t)
        terms.extend((s, k * e) for s, e in boundary_terms(Q, t))
    return Chain(c.degree - 1, terms, c.theory, c.ring)


def all_tuples(Q, n, theory=RACK):
    """Canonical (lexicographic) basis of the theory's chain group in degree n."""
    _check_theory(theory)
    tuples = product(range(Q.size), repeat=n)
    if theory == QUANDLE:
        return [t for t in tuples if not is_degenerate(t)]
    if theory == DEGENERATE:
        return [t for t in tuples if is_degenerate(t)]
    return list(tuples)


def coboundary(Q, f):
    """``(δf)(t) = f(∂t)`` for every (n+1)-tuple ``t``."""
    # ∂ preserves degenerate tuples, so a quandle cochain's coboundary
    # vanishes on them and only the theory's own basis needs evaluating
    vals = {t: sum(k * f(s) for s, k in boundary_terms(Q, t))
            for t in all_tuples(Q, f.degree + 1, f.theory)}
    return Cochain(f.degree + 1, vals, f.theory, f.ring)


def project_quandle(c):
    return c.like(list(c.items()), theory=QUANDLE)


def shift(c):
    """σ: drop the first coordinate (forget the shadow colour)."""
    if c.degree == 0:
        raise DegreeZero("shift needs degree >= 1")
    return c.like([(t[1:], k) for t, k in c.items()], degree=c.degree - 1)


def bullet(c1, c2):
    if c1.ring != c2.ring:
        raise RingMismatch(f"{c1.ring} vs {c2.ring}")
    theory = QUANDLE if QUANDLE in (c1.theory, c2.theory) else RACK
    terms = [(s + t, a * b) for s, a in c1.items() for t, b in c2.items()]
    return Chain(c1.degree + c2.degree, terms, theory, c1.ring)


def split_terms(t):
    """Terms of ``x1 • (x2 - x1) • ... • (xn - x_{n-1})``."""
    out = [((t[0],), 1)]
    for i in range(1, len(t)):
        out = ([(s + (t[i],), k) for s, k in out]
               + [(s + (t[i - 1],), -k) for s, k in out])
    return out


def split(Q, c):
    """The splitting chain map α onto a complement of the degenerate subcomplex."""
    if not Q.is_quandle:
        raise NotAQuandle("splitting map needs a quandle")
    if c.degree == 0:
        return c
    terms = []
    for t, k in c.items():
        terms.extend((s, k * e) for s, e in split_terms(t))
    return c.like(terms, theory=RACK)


def eval_cochain(f, c):
    """The pairing ``<c, f>`` in the cochain's coefficient ring."""
    if f.degree != c.degree:
        raise DegreeMismatch(f"cochain degree {f.degree}, chain degree {c.degree}")
    if c.ring != f.ring and c.ring != ZZ:
        raise RingMismatch(f"chain over {c.ring}, cochain over {f.ring}")
    return f.ring.reduce(sum(k * f(t) for t, k in c.items()))


# -- text formats -----------------------------------------------------------

_TERM = re.compile(r"^\s*([+-]?\d+)\s+\((.*)\)\s*$")


def format_chain(c):
    lines = [f"chain {c.theory} {c.degree} {c.ring}"]
    for t, k in c.items():
        lines.append(f"{k} (" + ",".join(str(x) for x in t) + ")")
    return "\n".join(lines) + "\n"


def parse_chain(text):
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ShadowHomError("empty chain file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "chain":
        raise ShadowHomError(f"bad chain header {lines[0]!r}")
    theory, degree, ring = head[1], int(head[2]), parse_ring(head[3])
    terms = []
    for ln in lines[1:]:
        m = _TERM.match(ln)
        if not m:
            raise ShadowHomError(f"bad chain term {ln!r}")
        inner = m.group(2).strip()
        t = tuple(int(x) for x in inner.split(",")) if inner else ()
        terms.append((t, int(m.group(1))))
    return Chain(degree, terms, theory, ring)
