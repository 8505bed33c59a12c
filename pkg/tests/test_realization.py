import random

import pytest

from conftest import load
from shadowhom.chains import RACK, ZZ, Chain, Ring, boundary
from shadowhom.diagram import enumerate_colourings, shadow_chain, shadow_extend
from shadowhom.errors import NonIntegerCoefficients, NotACycle
from shadowhom.quandle import dihedral
from shadowhom.realization import (SIDES, UnitSquare, chain_of, format_surface,
                                   realize, surface_stats)


def random_cycle(X, seed):
    rnd = random.Random(seed)
    while True:
        terms = [(tuple(rnd.randrange(X.size) for _ in range(4)), rnd.randint(-2, 2))
                 for _ in range(rnd.randint(1, 4))]
        c = boundary(X, Chain(4, terms))
        if not c.is_zero():
            return c


def check_surface(X, c):
    S = realize(X, c)
    assert chain_of(S) == c
    glued = [f for pair in S.gluings for f in pair]
    assert len(glued) == len(set(glued)) == 4 * len(S.squares)
    st = surface_stats(S)
    assert all(chi % 2 == 0 and chi <= 2 for chi in st.euler)
    assert st.vertices - st.edges + st.faces == sum(st.euler)
    return S


def test_face_chains_sum_to_boundary():
    X = dihedral(5)
    for t in [(0, 1, 2), (3, 3, 1), (4, 2, 2)]:
        for sign in (1, -1):
            sq = UnitSquare(0, sign, t)
            assert sq.faces(X) == boundary(X, Chain.gen(*t)) * sign


@pytest.mark.parametrize("seed", range(50))
def test_random_boundaries_round_trip(seed):
    X = dihedral(3)
    check_surface(X, random_cycle(X, seed))


@pytest.mark.parametrize("name", ["trefoil", "figure8", "hopf", "knot_9_37"])
def test_fixture_shadow_chains_round_trip(name):
    D, X = load(name), dihedral(3)
    for C in enumerate_colourings(D, X):
        S = check_surface(X, shadow_chain(D, shadow_extend(D, C, 1)))
        assert len(S.squares) <= len(D.crossings)


def test_single_degenerate_square_is_a_sphere():
    X = dihedral(3)
    S = realize(X, Chain(3, [((0, 0, 0), 1)]))
    st = surface_stats(S)
    assert (st.components, st.euler, st.genus) == (1, (2,), (0,))


def test_empty_chain():
    S = realize(dihedral(3), Chain(3, []))
    assert S.squares == [] and surface_stats(S).components == 0


def test_not_a_cycle():
    with pytest.raises(NotACycle):
        realize(dihedral(3), Chain.gen(0, 1, 2))


def test_modular_coefficients_rejected():
    with pytest.raises(NonIntegerCoefficients):
        realize(dihedral(3), Chain(3, [((0, 0, 0), 1)], RACK, Ring(3)))


def test_format_lists_every_square_and_gluing():
    X = dihedral(3)
    c = random_cycle(X, 7)
    S = realize(X, c)
    text = format_surface(S)
    assert text.count("\nsquare ") == len(S.squares)
    assert text.count("\nface ") == len(S.gluings)
    assert all(s in SIDES for (_, s), _ in S.gluings)
