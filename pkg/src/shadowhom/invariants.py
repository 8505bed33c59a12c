"""Shadow cocycle state sums.

Weights are residues mod ``m`` written additively, so a state sum is a
multiset of residues: ``{value: number of states}``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .chains import QUANDLE, RACK, Cochain, Ring, coboundary, is_degenerate
from .diagram import (CALIBRATED, crossing_sign, enumerate_colourings,
                      initial_region, shadow_extend)
from .errors import (DegreeMismatch, ElementOutOfRange, Malformed,
                     NotACocycle, RingMismatch)
from .quandle import orbit_of, read_quandle


@dataclass
class StateSum:
    modulus: int
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        self.counts = {r: k for r, k in sorted(self.counts.items()) if k}

    @property
    def states(self):
        return sum(self.counts.values())

    def scaled(self, k):
        return StateSum(self.modulus, {r: k * c for r, c in self.counts.items()})

    def __str__(self):
        lines = [f"value {r}: {c}" for r, c in self.counts.items()]
        lines.append(f"states: {self.states}")
        return "\n".join(lines)


def _check_phi(X, phi):
    if phi.degree != 3:
        raise DegreeMismatch(f"need a 3-cocycle, got degree {phi.degree}")
    if phi.ring.modulus is None:
        raise RingMismatch("state sums need a cocycle with values mod m")
    for t, _ in phi.items():
        if any(not 0 <= x < X.size for x in t):
            raise ElementOutOfRange(f"cocycle tuple {t} outside {X!r}")


def boltzmann_weight(D, S, p, phi, convention=CALIBRATED):
    """``ε_p · φ(S(r_ini), C(u_ini), C(o))`` mod m."""
    if phi.ring.modulus is None:
        raise RingMismatch("Boltzmann weights need a cocycle with values mod m")
    x = D.crossings[p]
    cols = S.colouring.as_dict()
    ui, _ = D.under_roles(p, convention)
    t = (S.region_colours[initial_region(D, p, convention)], cols[ui], cols[x.slots[1]])
    return phi.ring.reduce(crossing_sign(D, p, convention) * phi(t))


def state_weight(D, S, phi, convention=CALIBRATED):
    return phi.ring.reduce(sum(boltzmann_weight(D, S, p, phi, convention)
                               for p in range(len(D.crossings))))


def phi(D, X, cocycle, convention=CALIBRATED):
    """Sum over every colouring and every base colour of the base region."""
    _check_phi(X, cocycle)
    acc = Counter()
    for C in enumerate_colourings(D, X, convention):
        for a in range(X.size):
            S = shadow_extend(D, C, a, convention=convention)
            acc[state_weight(D, S, cocycle, convention)] += 1
    return StateSum(cocycle.ring.modulus, acc)


def based_shadow(D, C, edge, convention=CALIBRATED):
    """The unique extension whose regions beside ``edge`` carry its colour."""
    rm = D.region_map
    x = C[edge]
    ini = rm.initial(edge, convention)
    S = shadow_extend(D, C, x, base_region=ini, convention=convention)
    ter = rm.terminal(edge, convention)
    if S.region_colours[ter] != x:
        raise AssertionError(f"terminal region of edge {edge} is not coloured {x}")
    return S


def phi_based(D, X, cocycle, edge, convention=CALIBRATED):
    _check_phi(X, cocycle)
    if edge not in D.region_map.left:
        raise Malformed(f"diagram has no edge {edge}")
    acc = Counter()
    for C in enumerate_colourings(D, X, convention):
        S = based_shadow(D, C, edge, convention)
        acc[state_weight(D, S, cocycle, convention)] += 1
    return StateSum(cocycle.ring.modulus, acc)


def orbit_lift_cocycle(X, phi2, beta):
    """``φ~(α, a, b) = φ2(a, b)`` when α lies in the orbit of ``beta``, else 0."""
    if phi2.degree != 2:
        raise DegreeMismatch("need a 2-cocycle")
    if not coboundary(X, phi2).is_zero():
        raise NotACocycle("input 2-cochain is not closed")
    orbit = orbit_of(X, beta)
    vals = {(a,) + t: v for a in orbit for t, v in phi2.items()}
    lifted = Cochain(3, vals, RACK, phi2.ring)
    if not coboundary(X, lifted).is_zero():
        raise AssertionError("lifted cochain is not closed")
    return lifted


# -- cocycle files --------------------------------------------------------------

_HEAD = re.compile(r"cocycle\s+(\d+)\s+mod\s+(\d+)\s+over\s+(\S+)")
_LINE = re.compile(r"\(([^)]*)\)\s*=\s*(-?\d+)")


def parse_cocycle(text, theory=QUANDLE):
    """Returns ``(cochain, quandle_reference)``."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise Malformed("empty cocycle file")
    m = _HEAD.fullmatch(lines[0])
    if not m:
        raise Malformed(f"bad cocycle header {lines[0]!r}")
    n, mod, ref = int(m.group(1)), int(m.group(2)), m.group(3)
    vals = {}
    for ln in lines[1:]:
        mm = _LINE.fullmatch(ln)
        if not mm:
            raise Malformed(f"bad cocycle line {ln!r}")
        try:
            t = tuple(int(v) for v in mm.group(1).split(","))
        except ValueError:
            raise Malformed(f"bad tuple in {ln!r}") from None
        if t in vals:
            raise Malformed(f"tuple {t} listed twice")
        vals[t] = int(mm.group(2))
    if theory == QUANDLE:
        bad = [t for t, v in vals.items() if is_degenerate(t) and v % mod]
        if bad:
            raise Malformed(f"quandle cocycle is nonzero on degenerate {bad[0]}")
    return Cochain(n, vals, theory, Ring(mod)), ref


def read_cocycle(path, theory=QUANDLE):
    """Returns ``(cochain, quandle)``; the quandle path is file-relative."""
    path = Path(path)
    f, ref = parse_cocycle(path.read_text(), theory)
    X = read_quandle(path.parent / ref)
    if not coboundary(X, f).is_zero():
        raise NotACocycle(f"{path.name} is not closed")
    return f, X


def format_cocycle(f, quandle_ref):
    lines = [f"cocycle {f.degree} mod {f.ring.modulus} over {quandle_ref}"]
    lines += [f"({','.join(map(str, t))}) = {v}" for t, v in f.items()]
    return "\n".join(lines) + "\n"


__all__ = [
    "StateSum", "boltzmann_weight", "state_weight", "phi", "phi_based",
    "based_shadow", "orbit_lift_cocycle", "parse_cocycle", "read_cocycle",
    "format_cocycle",
]
