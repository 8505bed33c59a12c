"""Command-line front end: ``shadowhom <command> [options]``.

Exit status is 0 on success, 2 on usage errors and 1 on domain errors, in
which case the error class name is printed to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import chains, diagram, homology, invariants, quandle, realization, verify, wirtinger
from .chains import QUANDLE, RACK, format_chain, parse_chain, parse_ring
from .errors import ShadowHomError


class UsageError(Exception):
    pass


class VerificationFailed(ShadowHomError):
    pass


def _out(args, human, machine=None):
    if args.format == "machine":
        print("format: 1")
        print(machine if machine is not None else human)
    else:
        print(human)


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _quandle(args):
    _need(args, "quandle")
    return quandle.read_quandle(args.quandle)


def _pd(args):
    _need(args, "pd")
    return diagram.read_pd(args.pd)


def _chain(args):
    _need(args, "chain")
    return parse_chain(Path(args.chain).read_text())


def _element(args, X):
    if args.base_colour is None:
        return 0
    try:
        v = int(args.base_colour)
    except ValueError:
        raise UsageError("--base-colour must be an element here") from None
    if not 0 <= v < X.size:
        raise UsageError(f"--base-colour {v} outside 0..{X.size - 1}")
    return v


# -- commands ---------------------------------------------------------------------

def cmd_quandle(args):
    if args.action == "check":
        X = _quandle(args)
        k = len(quandle.orbits(X))
        kind = "quandle" if X.is_quandle else "rack"
        conn = "connected" if k == 1 else "not connected"
        human = f"{kind}: valid, {conn}, {k} orbit{'s' if k != 1 else ''}"
        machine = (f"kind: {kind}\norder: {X.size}\norbits: {k}\n"
                   + "\n".join("orbit: " + " ".join(map(str, o)) for o in quandle.orbits(X)))
        _out(args, human, machine)
        return
    if not args.params:
        raise UsageError("quandle make needs a kind and parameters")
    kind, *params = args.params
    try:
        nums = [int(p) for p in params]
    except ValueError:
        raise UsageError("quandle parameters must be integers") from None
    if kind == "conjugation":
        raise UsageError("build conjugation quandles from a group table in Python")
    try:
        X = quandle.make_quandle(kind, *nums)
    except (ValueError, TypeError) as err:
        raise UsageError(str(err)) from None
    text = quandle.format_quandle(X).rstrip("\n")
    _out(args, text)


def cmd_homology(args):
    X = _quandle(args)
    _need(args, "degree")
    ring = parse_ring(args.ring)
    G = homology.homology_group(X, args.degree, args.theory, ring)
    human = f"H_{args.degree}^{args.theory}({X.name}; {ring}) = {G}"
    machine = (f"degree: {args.degree}\ntheory: {args.theory}\nring: {ring}\n"
               f"free_rank: {G.free_rank}\n"
               f"torsion: {' '.join(map(str, G.torsion)) or '-'}")
    if args.degree <= 1:
        # low degrees depend on taking C_0 = A with boundary (x) -> 1
        human += "\nnote: augmented complex, degree <= 1 differs from the unaugmented one"
        machine += "\naugmented: yes"
    _out(args, human, machine)


def cmd_colourings(args):
    D, X = _pd(args), _quandle(args)
    cols = diagram.enumerate_colourings(D, X)
    blocks = [f"colouring {i}\n" + diagram.format_colouring(D, C).rstrip("\n")
              for i, C in enumerate(cols)]
    _out(args, "\n".join(blocks + [f"colourings: {len(cols)}"]))


def cmd_shadow(args):
    D, X = _pd(args), _quandle(args)
    a = _element(args, X)
    blocks = []
    for i, C in enumerate(diagram.enumerate_colourings(D, X)):
        S = diagram.shadow_extend(D, C, a, base_region=args.base_region)
        blocks.append(f"colouring {i}\n" + diagram.format_shadow(D, S).rstrip("\n"))
    _out(args, "\n".join(blocks + [f"shadow colourings: {len(blocks)}"]))


def cmd_chain(args):
    D, X = _pd(args), _quandle(args)
    out = []
    for i, C in enumerate(diagram.enumerate_colourings(D, X)):
        if args.command == "chain2":
            c = diagram.diagram_chain(D, C)
        else:
            S = diagram.shadow_extend(D, C, _element(args, X), base_region=args.base_region)
            c = diagram.shadow_chain(D, S)
        if args.theory == QUANDLE:
            c = chains.project_quandle(c)
        out.append(f"# colouring {i}\n" + format_chain(c).rstrip("\n"))
    _out(args, "\n".join(out))


def _cocycle(args):
    _need(args, "cocycle")
    f, X = invariants.read_cocycle(args.cocycle)
    if args.quandle is not None:
        given = quandle.read_quandle(args.quandle)
        if given != X:
            raise UsageError("--quandle differs from the cocycle's quandle")
    return f, X


def cmd_invariant(args):
    D = _pd(args)
    f, X = _cocycle(args)
    if args.kind == "phi":
        s = invariants.phi(D, X, f)
    else:
        _need(args, "edge")
        s = invariants.phi_based(D, X, f, args.edge)
    _out(args, str(s))


def _word(args, D):
    if args.base_colour is None:
        return wirtinger.ArcWord(min(D.arcs)) if D.arcs else wirtinger.ArcWord(1)
    return wirtinger.parse_word(args.base_colour)


def cmd_shadow_class(args):
    D = _pd(args)
    c = wirtinger.symbolic_shadow_chain(D, _word(args, D), base_region=args.base_region)
    if args.theory == QUANDLE:
        c = chains.project_quandle(c)
    _out(args, chains.format_terms(c), format_chain(c).rstrip("\n"))


def cmd_pushforward(args):
    _need(args, "assignment")
    A = wirtinger.read_assignment(args.assignment)
    rep = wirtinger.check_assignment(A)
    if not rep.ok:
        raise VerificationFailed(str(rep))
    c = wirtinger.symbolic_shadow_chain(A.source, _word(args, A.source),
                                        base_region=args.base_region)
    c = wirtinger.pushforward(c, A, simplify=True)
    if args.theory == QUANDLE:
        c = chains.project_quandle(c)
    _out(args, chains.format_terms(c), format_chain(c).rstrip("\n"))


def cmd_verify(args):
    if args.example == "4_1":
        rep = verify.verify_figure8()
    else:
        rep = verify.verify_surjection(args.example)
    _out(args, str(rep))
    if not rep.ok:
        raise VerificationFailed(f"example {args.example} did not verify")


def cmd_realize(args):
    X, c = _quandle(args), _chain(args)
    S = realization.realize(X, c)
    _out(args, realization.format_surface(S).rstrip("\n"))


def cmd_boundary(args):
    X, c = _quandle(args), _chain(args)
    _out(args, format_chain(chains.boundary(X, c)).rstrip("\n"))


def cmd_in_boundary(args):
    X, c = _quandle(args), _chain(args)
    theory = args.theory if args.theory_given else None
    cert = homology.in_boundary_image(X, c, theory)
    if cert.is_boundary:
        human = "boundary: yes\n" + format_chain(cert.witness).rstrip("\n")
    else:
        f = cert.obstruction
        human = (f"boundary: no ({cert.description})\n"
                 + "\n".join(f"({','.join(map(str, t))}) = {v}" for t, v in f.items()))
    _out(args, human)


# -- parser -------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p):
    p.add_argument("--quandle")
    p.add_argument("--pd")
    p.add_argument("--cocycle")
    p.add_argument("--chain")
    p.add_argument("--assignment")
    p.add_argument("--degree", type=int)
    p.add_argument("--theory", choices=(RACK, QUANDLE, "degenerate"))
    p.add_argument("--ring", default="z")
    p.add_argument("--base-region", type=int)
    p.add_argument("--base-colour")
    p.add_argument("--edge", type=int)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap; computations currently run serially")


def build_parser():
    parser = _Parser(prog="shadowhom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(func=func)
        return p

    p = add("quandle", cmd_quandle)
    p.add_argument("action", choices=("check", "make"))
    p.add_argument("params", nargs="*")
    add("homology", cmd_homology)
    add("colourings", cmd_colourings)
    add("shadow", cmd_shadow)
    add("chain2", cmd_chain)
    add("chain3", cmd_chain)
    p = add("invariant", cmd_invariant)
    p.add_argument("kind", choices=("phi", "phi-based"))
    add("shadow-class", cmd_shadow_class)
    add("pushforward", cmd_pushforward)
    p = add("verify-example", cmd_verify)
    p.add_argument("example", choices=("4_1", "9_37", "10_59"))
    add("realize", cmd_realize)
    add("boundary", cmd_boundary)
    add("in-boundary", cmd_in_boundary)
    for p in sub.choices.values():
        _common(p)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        args.theory_given = args.theory is not None
        if args.theory is None:
            args.theory = RACK
        args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except ShadowHomError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
