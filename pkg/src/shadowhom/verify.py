"""Worked examples: the figure-eight shadow chain and two maps onto it.

Each check returns a report object rather than raising, so that a failed
identity is visible together with the evidence collected for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import QUANDLE, Chain, eval_cochain, project_quandle
from .diagram import CALIBRATED, enumerate_colourings, read_pd
from .fixtures import data_path
from .homology import cocycle_space, in_boundary_image
from .quandle import dihedral
from .wirtinger import (ArcWord, check_assignment, evaluate_chain,
                        pushforward, read_assignment, symbolic_shadow_chain)

FIGURE8_CHAIN = [((4, 1, 4), 1), ((1, 3, 1), -1), ((1, 1, 3), -1), ((1, 3, 2), 1)]

# expected coefficient c in f_*[L_sh] = c [K_sh]
SURJECTIONS = {"9_37": ("map_9_37.asg", 3), "10_59": ("map_10_59.asg", -2)}


def figure8():
    return read_pd(data_path("figure8.pd"))


def figure8_expected(theory="rack"):
    terms = [(tuple(ArcWord(a) for a in t), k) for t, k in FIGURE8_CHAIN]
    return Chain(3, terms, theory)


def figure8_chain(convention=CALIBRATED):
    return symbolic_shadow_chain(figure8(), ArcWord(1), convention=convention)


@dataclass
class ExampleReport:
    name: str
    ok: bool
    lines: list = field(default_factory=list)

    def __str__(self):
        status = "confirmed" if self.ok else "NOT confirmed"
        return "\n".join([f"example {self.name}: {status}"] + self.lines)


def verify_figure8(convention=CALIBRATED):
    got = figure8_chain(convention)
    want = figure8_expected()
    qgot, qwant = project_quandle(got), project_quandle(want)
    dropped = sorted(set(t for t, _ in got.items()) - set(t for t, _ in qgot.items()))
    ok = got == want and qgot == qwant
    lines = [f"shadow chain: {got}", f"quandle projection: {qgot}",
             f"dropped: {', '.join('(' + ','.join(map(str, t)) + ')' for t in dropped)}"]
    return ExampleReport("4_1", ok, lines)


def measured_coefficient(L_chain, K_chain, K, X):
    """Residues ``k`` mod |X| with ``<g L, θ> = k <g K, θ>`` for every
    colouring ``g`` of ``K`` into ``X`` and every quandle 3-cocycle ``θ``."""
    p = X.size
    cocycles, _ = cocycle_space(X, 3, QUANDLE, p)
    pairs = []
    for g in enumerate_colourings(K, X):
        lc = project_quandle(evaluate_chain(L_chain, g))
        kc = project_quandle(evaluate_chain(K_chain, g))
        pairs += [(eval_cochain(f, lc), eval_cochain(f, kc)) for f in cocycles]
    return [k for k in range(p) if all((a - k * b) % p == 0 for a, b in pairs)]


def verify_surjection(name, coefficient=None, quandles=None, base_word=None):
    asg, expected = SURJECTIONS[name]
    c = expected if coefficient is None else coefficient
    A = read_assignment(data_path(asg))
    K = A.target
    quandles = quandles or [dihedral(3), dihedral(5)]
    lines = []
    rep = check_assignment(A, quandles)
    lines.append(str(rep))
    base = base_word if base_word is not None else ArcWord(min(A.source.arcs))
    L_sh = symbolic_shadow_chain(A.source, base)
    pushed = pushforward(L_sh, A)
    K_sh = figure8_chain()
    diff = pushed - c * K_sh
    ok = rep.ok
    for X in quandles:
        good = bad = 0
        for g in enumerate_colourings(K, X):
            cert = in_boundary_image(X, project_quandle(evaluate_chain(diff, g)), QUANDLE)
            if cert.is_boundary:
                good += 1
            else:
                bad += 1
        ok = ok and bad == 0
        ks = measured_coefficient(pushed, K_sh, K, X)
        shown = "any" if len(ks) == X.size else ", ".join(map(str, ks)) or "none"
        lines.append(f"{X.name}: coefficient {c}: {good} colourings certified, "
                     f"{bad} obstructed; coefficients consistent mod {X.size}: {shown}")
    return ExampleReport(name, ok, lines)
