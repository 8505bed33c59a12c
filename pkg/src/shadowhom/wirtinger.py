"""Words in the knot quandle of a diagram, and maps between knot quandles.

An :class:`ArcWord` is a Wirtinger generator (an arc id) followed by a
sequence of right actions ``◁^{±1} v``.  Text syntax: ``3``, ``(3 < 1)``,
``((3 < 1) > 2)``.

>>> w = parse_word("((4 < 1) > 1)")
>>> str(w), str(normalize(w))
('((4 < 1) > 1)', '4')
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from .chains import RACK, ZZ, Chain
from .diagram import (CALIBRATED, LEFT, crossing_relations, crossing_sign,
                      enumerate_colourings, initial_region, read_pd)
from .errors import InconsistentShadow, Malformed, UnknownArc
from .quandle import conjugation, dihedral


class ArcWord:
    __slots__ = ("base", "ops", "_key")

    def __init__(self, base, ops=()):
        self.base = int(base)
        self.ops = tuple((w, int(e)) for w, e in ops)
        for w, e in self.ops:
            if not isinstance(w, ArcWord) or e not in (1, -1):
                raise ValueError(f"bad operation ({w!r}, {e})")
        self._key = (self.base, tuple((w._key, e) for w, e in self.ops))

    @classmethod
    def gen(cls, a):
        return cls(a)

    @property
    def is_generator(self):
        return not self.ops

    def act(self, other, e=1):
        return ArcWord(self.base, self.ops + ((other, e),))

    def __lt__(self, other):
        return self._key < other._key

    def __eq__(self, other):
        return isinstance(other, ArcWord) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def size(self):
        return 1 + sum(w.size() for w, _ in self.ops)

    def arcs(self):
        out = {self.base}
        for w, _ in self.ops:
            out |= w.arcs()
        return out

    def __str__(self):
        s = str(self.base)
        for w, e in self.ops:
            s = f"({s} {'<' if e == 1 else '>'} {w})"
        return s

    def __repr__(self):
        return f"ArcWord({str(self)!r})"


_TOKEN = re.compile(r"\s*(\d+|[()<>])")


def parse_word(text):
    tokens = _TOKEN.findall(text)
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise Malformed(f"bad word {text!r}")
    pos = 0

    def expr():
        nonlocal pos
        if pos >= len(tokens):
            raise Malformed(f"truncated word {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok.isdigit():
            return ArcWord(int(tok))
        if tok != "(":
            raise Malformed(f"unexpected {tok!r} in {text!r}")
        left = expr()
        if pos >= len(tokens) or tokens[pos] not in "<>":
            raise Malformed(f"expected < or > in {text!r}")
        e = 1 if tokens[pos] == "<" else -1
        pos += 1
        right = expr()
        if pos >= len(tokens) or tokens[pos] != ")":
            raise Malformed(f"unbalanced parentheses in {text!r}")
        pos += 1
        return left.act(right, e)

    w = expr()
    if pos != len(tokens):
        raise Malformed(f"trailing input in {text!r}")
    return w


def normalize(w):
    """Cancel adjacent ``◁v ◀v`` and ``◀v ◁v`` pairs (R1 only)."""
    return reduce_word(w)


def reduce_word(w, relations=None, idempotent=False):
    """Normalize ``w``; optionally also rewrite by generator relations.

    ``relations`` maps ``(g, o, e)`` to ``k`` for generators with
    ``g ◁^e o = k``.  ``idempotent`` drops actions of a word on itself.
    """
    ops = []
    base = w.base
    for v, e in w.ops:
        v = reduce_word(v, relations, idempotent)
        if ops and ops[-1] == (v, -e):
            ops.pop()
            continue
        if idempotent and ArcWord(base, ops) == v:
            continue
        if relations and not ops and v.is_generator:
            k = relations.get((base, v.base, e))
            if k is not None:
                base = k
                continue
        ops.append((v, e))
    return ArcWord(base, ops)


def evaluate(w, C):
    """Value of ``w`` under the colouring ``C`` (arc id -> element)."""
    X, arc_col = C.target, C.arc_map
    return _eval(w, X, arc_col)


def _eval(w, X, arc_col):
    try:
        v = arc_col[w.base]
    except KeyError:
        raise UnknownArc(f"arc {w.base} is not coloured") from None
    for u, e in w.ops:
        x = _eval(u, X, arc_col)
        v = X.op[v][x] if e == 1 else X.inv_op[v][x]
    return v


def evaluate_chain(c, C):
    X, arc_col = C.target, C.arc_map
    return c.map_entries(lambda w: _eval(w, X, arc_col))


def default_test_quandles():
    s3 = [[_s3_mult(g, h) for h in range(6)] for g in range(6)]
    return [dihedral(3), dihedral(5), conjugation(s3, name="S3")]


_S3 = list(permutations(range(3)))


def _s3_mult(g, h):
    p, q = _S3[g], _S3[h]
    return _S3.index(tuple(p[q[i]] for i in range(3)))


# -- assignments --------------------------------------------------------------

@dataclass
class WordAssignment:
    source: object          # diagram L
    target: object          # diagram K
    words: dict             # arc of L -> ArcWord over arcs of K

    def __post_init__(self):
        missing = set(self.source.arcs) - set(self.words)
        if missing:
            raise UnknownArc(f"source arcs {sorted(missing)} are unassigned")
        for a, w in self.words.items():
            if a not in self.source.arcs:
                raise UnknownArc(f"source has no arc {a}")
            bad = w.arcs() - set(self.target.arcs)
            if bad:
                raise UnknownArc(f"target has no arc {sorted(bad)}")


def parse_assignment(text, base_dir="."):
    src = tgt = None
    words = {}
    for ln in text.splitlines():
        ln = ln.split("#")[0].strip()
        if not ln:
            continue
        if ln.startswith("source "):
            src = ln.split(None, 1)[1]
        elif ln.startswith("target "):
            tgt = ln.split(None, 1)[1]
        else:
            m = re.fullmatch(r"arc\s+(\d+)\s*->\s*(.+)", ln)
            if not m:
                raise Malformed(f"bad assignment line {ln!r}")
            words[int(m.group(1))] = parse_word(m.group(2))
    if src is None or tgt is None:
        raise Malformed("assignment needs source and target lines")
    base = Path(base_dir)
    return WordAssignment(read_pd(base / src), read_pd(base / tgt), words)


def read_assignment(path):
    path = Path(path)
    return parse_assignment(path.read_text(), base_dir=path.parent)


def format_assignment(A, source_ref, target_ref):
    lines = [f"source {source_ref}", f"target {target_ref}"]
    lines += [f"arc {a} -> {w}" for a, w in sorted(A.words.items())]
    return "\n".join(lines) + "\n"


@dataclass
class AssignmentReport:
    ok: bool
    checked: int
    witness: object = None   # (quandle name, crossing index, arc colours)

    def __str__(self):
        if self.ok:
            return f"assignment: pass ({self.checked} relation checks)"
        q, p, cols = self.witness
        return f"assignment: FAIL at crossing {p} over {q} with arc colours {cols}"


def check_assignment(A, quandles=None, convention=CALIBRATED):
    quandles = quandles or default_test_quandles()
    rels = crossing_relations(A.source, convention)
    checked = 0
    for X in quandles:
        for C in enumerate_colourings(A.target, X, convention):
            vals = {a: _eval(w, X, C.arc_map) for a, w in A.words.items()}
            for p, (ui, o, ut) in enumerate(rels):
                checked += 1
                if X.op[vals[ui]][vals[o]] != vals[ut]:
                    return AssignmentReport(False, checked,
                                            (X.name, p, dict(C.arc_map)))
    return AssignmentReport(True, checked)


def identity_assignment(D):
    return WordAssignment(D, D, {a: ArcWord(a) for a in D.arcs})


# -- symbolic chains -----------------------------------------------------------

def relation_table(D, convention=CALIBRATED):
    table = {}
    for ui, o, ut in crossing_relations(D, convention):
        table[(ui, o, 1)] = ut
        table[(ut, o, -1)] = ui
    return table


def symbolic_region_words(D, base_word, base_region=None, convention=CALIBRATED,
                          quandles=None):
    """Region words from (SC), choosing the shortest derivation per region.

    Words are simplified with the diagram's own crossing relations and
    idempotency; (SC) is then verified by evaluation under every colouring
    into the test quandles.
    """
    rm = D.region_map
    base = rm.base_region if base_region is None else base_region
    rel = relation_table(D, convention)

    def red(w):
        return reduce_word(w, rel, idempotent=True)

    steps = []
    for e, l, r in rm.adjacency():
        ter, ini = (l, r) if convention.normal == LEFT else (r, l)
        steps.append((ArcWord(D.arc_of[e]), ini, ter))
    words = [None] * len(rm.faces)
    words[base] = red(base_word)
    changed = True
    while changed:
        changed = False
        for x, ini, ter in steps:
            for src, dst, e in ((ini, ter, 1), (ter, ini, -1)):
                if words[src] is None:
                    continue
                cand = red(words[src].act(x, e))
                cur = words[dst]
                if dst != base and (cur is None or
                                    (cand.size(), cand) < (cur.size(), cur)):
                    words[dst] = cand
                    changed = True
    for X in quandles or default_test_quandles():
        for C in enumerate_colourings(D, X, convention):
            vals = [_eval(w, X, C.arc_map) for w in words]
            for x, ini, ter in steps:
                if X.op[vals[ini]][C.arc_map[x.base]] != vals[ter]:
                    raise InconsistentShadow(f"(SC) fails between regions {ini}, {ter}")
    return words


def symbolic_shadow_chain(D, base_word=None, base_region=None,
                          convention=CALIBRATED, theory=RACK):
    if not D.crossings:
        return Chain(3, (), theory, ZZ)
    if base_word is None:
        base_word = ArcWord(min(D.arcs))
    words = symbolic_region_words(D, base_word, base_region, convention)
    terms = []
    for x in D.crossings:
        ui, _ = D.under_roles(x.index, convention)
        r = initial_region(D, x.index, convention)
        terms.append(((words[r], ArcWord(D.arc_of[ui]), ArcWord(D.arc_of[x.slots[1]])),
                      crossing_sign(D, x.index, convention)))
    return Chain(3, terms, theory, ZZ)


def symbolic_diagram_chain(D, convention=CALIBRATED):
    terms = []
    for x in D.crossings:
        ui, _ = D.under_roles(x.index, convention)
        terms.append(((ArcWord(D.arc_of[ui]), ArcWord(D.arc_of[x.slots[1]])),
                      crossing_sign(D, x.index, convention)))
    return Chain(2, terms, RACK, ZZ)


def pushforward(c, A, simplify=False):
    """Substitute ``A`` into every entry and cancel inverse pairs.

    With ``simplify`` the words are further rewritten by the target's
    crossing relations and idempotency, which keeps their values.
    """
    rel = relation_table(A.target) if simplify else None

    def sub(w):
        try:
            img = A.words[w.base]
        except KeyError:
            raise UnknownArc(f"no image for arc {w.base}") from None
        return ArcWord(img.base, img.ops + tuple((sub(v), e) for v, e in w.ops))

    if simplify:
        return c.map_entries(lambda w: reduce_word(sub(w), rel, idempotent=True))
    return c.map_entries(lambda w: normalize(sub(w)))


__all__ = [
    "ArcWord", "parse_word", "normalize", "reduce_word", "evaluate",
    "evaluate_chain", "default_test_quandles", "WordAssignment",
    "parse_assignment", "read_assignment", "format_assignment",
    "AssignmentReport", "check_assignment", "identity_assignment",
    "relation_table", "symbolic_region_words", "symbolic_shadow_chain",
    "symbolic_diagram_chain", "pushforward",
]
