import pytest

from conftest import DIAGRAMS, load
from oracles import brute_colourings
from shadowhom.chains import QUANDLE, RACK, boundary, project_quandle, shift
from shadowhom.diagram import (CALIBRATED, Colouring, colouring_from_edges,
                               crossing_sign, diagram_chain,
                               enumerate_colourings, format_colouring,
                               format_pd, format_shadow, is_colouring,
                               parse_pd, regions, shadow_chain, shadow_extend)
from shadowhom.errors import (EdgeCountMismatch, InvalidColouring, Malformed,
                              NotPlanar, UnderStrandBroken)
from shadowhom.homology import in_boundary_image
from shadowhom.quandle import dihedral, trivial

SMALL = ["unknot", "trefoil", "trefoil_mirror", "trefoil_r1", "trefoil_r2",
         "figure8", "hopf"]


@pytest.mark.parametrize("name,n", [("trefoil", 5), ("figure8", 6), ("unknot", 2),
                                    ("hopf", 4), ("trefoil_r1", 6), ("trefoil_r2", 7)])
def test_region_counts(name, n):
    assert len(regions(load(name)).faces) == n


def test_every_edge_side_in_one_region(diagrams):
    for D in diagrams.values():
        rm = D.region_map
        seen = [(e, s) for f in rm.faces for e, s in f]
        assert len(seen) == len(set(seen))
        if D.crossings:
            assert len(seen) == 2 * len(D.edges)


def test_base_region_defaults_to_right_of_first_edge():
    D = load("trefoil")
    assert D.region_map.base_region == D.region_map.right[1]
    assert regions(D, base_region=2).base_region == 2


def test_signs():
    T, M, F = load("trefoil"), load("trefoil_mirror"), load("figure8")
    assert [crossing_sign(T, p) for p in range(3)] == [1, 1, 1]
    assert [crossing_sign(M, p) for p in range(3)] == [-1, -1, -1]
    assert sorted(crossing_sign(F, p) for p in range(4)) == [-1, -1, 1, 1]


@pytest.mark.parametrize("name,q,count", [("trefoil", "Z3", 9), ("figure8", "Z3", 3),
                                          ("trefoil", "T2", 2), ("hopf", "Z3", 3),
                                          ("trefoil_r1", "Z3", 9), ("figure8", "Z5", 25),
                                          ("hopf", "T2", 4)])
def test_colouring_counts_against_brute_force(name, q, count):
    X = {"Z3": dihedral(3), "Z5": dihedral(5), "T2": trivial(2)}[q]
    D = load(name)
    cols = enumerate_colourings(D, X)
    assert len(cols) == count
    brute = brute_colourings(D, X)
    assert sorted(tuple(v for _, v in C.edge_colours) for C in cols) == sorted(brute)


def test_colourings_sorted():
    cols = enumerate_colourings(load("trefoil"), dihedral(3))
    keys = [tuple(v for _, v in C.edge_colours) for C in cols]
    assert keys == sorted(keys)


@pytest.mark.parametrize("name", DIAGRAMS)
@pytest.mark.parametrize("q", [3, 5])
def test_chains_are_cycles(name, q):
    X = dihedral(q)
    D = load(name)
    cols = enumerate_colourings(D, X)
    n = 0
    for C in cols:
        c2 = diagram_chain(D, C)
        assert boundary(X, c2).is_zero()
        for a in range(X.size):
            S = shadow_extend(D, C, a)
            c3 = shadow_chain(D, S)
            assert boundary(X, c3).is_zero()
            assert shift(c3) == c2
            n += 1
    assert n == len(cols) * X.size


def test_unknot_shadow_is_one_step():
    D, X = load("unknot"), dihedral(5)
    for C in enumerate_colourings(D, X):
        x = C[D.edges[0]]
        S = shadow_extend(D, C, 2)
        assert sorted(S.region_colours) == sorted([2, X.op[2][x]])
        assert shadow_chain(D, S).is_zero()


def test_constant_trefoil_chain():
    D, X = load("trefoil"), dihedral(3)
    for C in enumerate_colourings(D, X):
        if len(set(v for _, v in C.edge_colours)) == 1:
            x = C[1]
            assert dict(diagram_chain(D, C).items()) == {(x, x): 3}


@pytest.mark.parametrize("name", SMALL + ["knot_9_37", "knot_10_59"])
def test_shadow_classes_agree_over_z3(name):
    D, X = load(name), dihedral(3)
    for C in enumerate_colourings(D, X):
        base = shadow_chain(D, shadow_extend(D, C, 0))
        for a in (1, 2):
            d = shadow_chain(D, shadow_extend(D, C, a)) - base
            cert = in_boundary_image(X, d, RACK)
            assert cert.is_boundary
            assert boundary(X, cert.witness) == d


def _matching(D1, D2, X):
    """Pairs of colourings agreeing on the edge labels 1..6."""
    c2 = {tuple(C[e] for e in range(1, 7)): C for C in enumerate_colourings(D2, X)}
    for C in enumerate_colourings(D1, X):
        yield C, c2[tuple(C[e] for e in range(1, 7))]


@pytest.mark.parametrize("q", [3, 5])
def test_reidemeister_two_diagram_chains_homologous(q):
    X = dihedral(q)
    D1, D2 = load("trefoil"), load("trefoil_r2")
    pairs = list(_matching(D1, D2, X))
    assert len(pairs) == len(enumerate_colourings(D2, X))
    for C1, C2 in pairs:
        d = diagram_chain(D2, C2) - diagram_chain(D1, C1)
        assert in_boundary_image(X, d, RACK).is_boundary


@pytest.mark.parametrize("q", [3, 5])
def test_reidemeister_one_shadow_chains_quandle_homologous(q):
    X = dihedral(q)
    D1, D2 = load("trefoil"), load("trefoil_r1")
    for C1, C2 in _matching(D1, D2, X):
        for a in range(X.size):
            c1 = shadow_chain(D1, shadow_extend(D1, C1, a))
            # the base region is beside edge 1 in both diagrams
            c2 = shadow_chain(D2, shadow_extend(D2, C2, a))
            d = project_quandle(c2 - c1)
            cert = in_boundary_image(X, d, QUANDLE)
            assert cert.is_boundary and cert.verify(X)


def test_pd_round_trip(diagrams):
    for D in diagrams.values():
        E = parse_pd(format_pd(D))
        assert E.components == D.components
        assert [x.slots for x in E.crossings] == [x.slots for x in D.crossings]
        assert E.arcs == D.arcs


def test_edge_used_three_times():
    with pytest.raises(EdgeCountMismatch):
        parse_pd("pd 6\ncomponents: [1,2,3,4,5,6]\nX 6 4 1 3\nX 4 2 5 1\nX 2 6 3 4\n")


def test_broken_under_strand():
    with pytest.raises(UnderStrandBroken):
        parse_pd("pd 6\ncomponents: [1,2,3,4,5,6]\nX 6 4 1 3\nX 4 5 2 1\nX 2 6 3 5\n")


def test_non_planar():
    # two crossings glued like a torus: still four-valent but F = 2
    with pytest.raises((NotPlanar, UnderStrandBroken)):
        parse_pd("pd 4\ncomponents: [1,2,3,4]\nX 1 3 2 4\nX 3 1 4 2\n")


def test_malformed_lines():
    with pytest.raises(Malformed):
        parse_pd("pd 2\ncomponents: [1,2]\nY 1 2 3 4\n")
    with pytest.raises(Malformed):
        parse_pd("")


def test_invalid_colouring_rejected():
    D, X = load("trefoil"), dihedral(3)
    assert not is_colouring(D, X, {e: (e == 1) for e in D.edges})
    with pytest.raises(InvalidColouring):
        colouring_from_edges(D, X, {e: int(e == 1) for e in D.edges})


def test_dumps():
    D, X = load("trefoil"), dihedral(3)
    C = enumerate_colourings(D, X)[0]
    assert format_colouring(D, C).splitlines()[0] == "edge 1 -> 0"
    S = shadow_extend(D, C, 1)
    assert format_shadow(D, S).splitlines()[-1].startswith("region 4 -> ")
