from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from oracles import alpha2, alpha3, boundary_1based, d3_displayed
from shadowhom.chains import (QUANDLE, RACK, ZZ, Chain, Cochain, Ring,
                              boundary, bullet, coboundary, eval_cochain,
                              format_chain, indicator, is_degenerate,
                              parse_chain, parse_ring, project_quandle, shift,
                              split)
from shadowhom.errors import (DegreeMismatch, DegreeZero, ElementOutOfRange,
                              NotAQuandle, RingMismatch, ShadowHomError)
from shadowhom.quandle import Quandle, dihedral, trivial


def as_dict(c):
    return dict(c.items())


def test_boundary_of_012_in_z3(Z3):
    c = boundary(Z3, Chain.gen(0, 1, 2))
    assert as_dict(c) == {(0, 1): -1, (0, 2): 1, (1, 0): 1, (2, 2): -1}


def test_degree_one_boundary_is_augmentation(Z3):
    c = boundary(Z3, Chain.gen(2))
    assert as_dict(c) == {(): 1}


def test_degree_zero_has_no_boundary(Z3):
    with pytest.raises(DegreeZero):
        boundary(Z3, Chain(0, [((), 1)]))


def test_out_of_range_entry(Z3):
    with pytest.raises(ElementOutOfRange):
        boundary(Z3, Chain.gen(0, 3))


def test_quandle_chains_drop_degenerate_terms():
    c = Chain(2, [((0, 0), 1), ((0, 1), 2)], QUANDLE)
    assert as_dict(c) == {(0, 1): 2}


def test_coefficients_reduce_mod_m():
    c = Chain(1, [((0,), 4), ((1,), 3)], RACK, Ring(3))
    assert as_dict(c) == {(0,): 1}


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Chain.gen(0) + Chain.gen(0, ring=Ring(3))
    with pytest.raises(DegreeMismatch):
        Chain.gen(0) + Chain.gen(0, 1)


@pytest.mark.parametrize("t", list(product(range(3), repeat=3)))
def test_d3_matches_displayed_expansion(Z3, t):
    assert as_dict(boundary(Z3, Chain.gen(*t))) == d3_displayed(Z3.op, *t)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_boundary_matches_one_based_oracle(Z5, n):
    for t in product(range(5), repeat=n):
        if n == 4 and sum(t) % 7:
            continue
        assert as_dict(boundary(Z5, Chain.gen(*t))) == boundary_1based(Z5.op, t)


def test_shift_drops_first_coordinate():
    c = Chain(3, [((0, 1, 2), 1), ((2, 1, 2), -1)])
    assert as_dict(shift(c)) == {}
    c = Chain(3, [((0, 1, 2), 1), ((2, 0, 2), -1)])
    assert as_dict(shift(c)) == {(1, 2): 1, (0, 2): -1}


def test_bullet_concatenates():
    c = bullet(Chain.gen(1), Chain(2, [((0, 2), 3)]))
    assert as_dict(c) == {(1, 0, 2): 3}


@pytest.mark.parametrize("t", list(product(range(3), repeat=2)))
def test_alpha2_explicit(Z3, t):
    assert as_dict(split(Z3, Chain.gen(*t))) == alpha2(*t)


@pytest.mark.parametrize("t", list(product(range(3), repeat=3)))
def test_alpha3_explicit(Z3, t):
    assert as_dict(split(Z3, Chain.gen(*t))) == alpha3(*t)


def test_split_needs_quandle():
    R = Quandle([[(a + 1) % 2] * 2 for a in range(2)])
    with pytest.raises(NotAQuandle):
        split(R, Chain.gen(0, 1))


def test_cochain_rejects_degenerate_values():
    with pytest.raises(ShadowHomError):
        Cochain(2, {(1, 1): 1}, QUANDLE, Ring(3))


def test_cochain_lookup_defaults_to_zero():
    f = Cochain(2, {(0, 1): 2}, RACK, Ring(3))
    assert f((0, 1)) == 2 and f((1, 0)) == 0


def test_eval_cochain_pairing():
    f = Cochain(2, {(0, 1): 2, (1, 2): 1}, RACK, Ring(3))
    c = Chain(2, [((0, 1), 1), ((1, 2), 5), ((2, 2), 7)])
    assert eval_cochain(f, c) == (2 + 5) % 3


def test_coboundary_is_adjoint(Z3):
    # <∂c, f> = <c, δf>
    f = Cochain(2, {(0, 1): 1, (2, 0): 2, (1, 1): 1}, RACK, Ring(3))
    for t in product(range(3), repeat=3):
        c = Chain.gen(*t)
        assert eval_cochain(f, boundary(Z3, c)) == eval_cochain(coboundary(Z3, f), c)


def test_indicator():
    f = indicator((0, 1, 2), QUANDLE, Ring(3))
    assert f((0, 1, 2)) == 1 and f((0, 1, 1)) == 0


def test_chain_file_round_trip():
    c = Chain(3, [((0, 1, 2), 1), ((2, 1, 0), -4)], RACK, Ring(5))
    assert parse_chain(format_chain(c)) == c
    q = project_quandle(Chain(2, [((0, 1), 1)]))
    assert parse_chain(format_chain(q)) == q


def test_parse_ring():
    assert parse_ring("z") == ZZ and parse_ring("Z7").modulus == 7
    with pytest.raises(ValueError):
        parse_ring("q")


tuples = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
                  min_size=1, max_size=6)


@settings(max_examples=60, deadline=None)
@given(tuples, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_boundary_is_linear_and_squares_to_zero(ts, ks):
    Z3 = dihedral(3)
    c = Chain(3, list(zip(ts, ks)))
    assert boundary(Z3, boundary(Z3, c)).is_zero()
    assert boundary(Z3, c + c) == boundary(Z3, c) * 2


@settings(max_examples=60, deadline=None)
@given(tuples)
def test_degenerate_tuples_stay_degenerate(ts):
    T = trivial(3)
    for t in ts:
        if is_degenerate(t):
            assert all(is_degenerate(s) for s, _ in boundary(T, Chain.gen(*t)).items())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_split_kills_nothing_outside_degenerates(t):
    # t - α(t) is purely degenerate
    Z5 = dihedral(5)
    d = Chain.gen(*t) - split(Z5, Chain.gen(*t))
    assert all(is_degenerate(s) for s, _ in d.items())


@pytest.mark.parametrize("n", [3, 4])
def test_shift_is_a_chain_map_above_degree_two(Z3, n):
    for t in product(range(3), repeat=n):
        c = Chain.gen(*t)
        assert boundary(Z3, shift(c)) == shift(boundary(Z3, c))


def test_shift_in_degree_two_differs_by_augmentation(Z3):
    # ∂₁(x) = () makes ∂σ(x,y) = () while σ∂(x,y) = () - () = 0
    for t in product(range(3), repeat=2):
        c = Chain.gen(*t)
        assert as_dict(boundary(Z3, shift(c)) - shift(boundary(Z3, c))) == {(): 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_split_is_a_chain_map(Z3, n):
    for t in product(range(3), repeat=n):
        c = Chain.gen(*t)
        assert boundary(Z3, split(Z3, c)) == split(Z3, boundary(Z3, c))
