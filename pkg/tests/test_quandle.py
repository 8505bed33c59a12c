from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from shadowhom.errors import (AxiomViolation, IndexOutOfRange, MalformedTable,
                              NotAGroup)
from shadowhom.quandle import (Quandle, alexander, check_hom, conjugation,
                               dihedral, format_quandle, is_connected,
                               make_quandle, orbits, parse_quandle, trivial)
from shadowhom.wirtinger import default_test_quandles


def test_dihedral_three_table():
    assert dihedral(3).op == ((0, 2, 1), (2, 1, 0), (1, 0, 2))


def test_inverse_operation_is_derived():
    Q = dihedral(5)
    for a, b in product(range(5), repeat=2):
        assert Q.apply(Q.apply(a, b), b, -1) == a
        assert Q.apply(Q.apply(a, b, -1), b) == a


def test_apply_out_of_range():
    with pytest.raises(IndexOutOfRange):
        dihedral(3).apply(3, 0)


@pytest.mark.parametrize("a,b,c", list(product(range(3), repeat=3)))
def test_z3_mutations_are_rejected(a, b, c):
    # changing any single entry of Z3 must break R1 or R2
    table = [list(r) for r in dihedral(3).op]
    if table[a][b] == c:
        return
    table[a][b] = c
    with pytest.raises(AxiomViolation) as err:
        Quandle(table)
    assert err.value.axiom in ("R1", "R2")


def test_r1_witness_names_the_column():
    with pytest.raises(AxiomViolation) as err:
        Quandle([[0, 0], [0, 1]])
    assert err.value.axiom == "R1"
    assert err.value.witness[2] == 0


def test_rack_is_accepted_but_not_quandle():
    # the cyclic rack a ◁ b = a + 1 satisfies R1 and R2 but not idempotency
    R = Quandle([[(a + 1) % 3] * 3 for a in range(3)])
    assert not R.is_quandle


@pytest.mark.parametrize("table", [[], [[0, 1]], [[0, 5], [1, 1]], [[0, "x"], [1, 1]]])
def test_malformed_tables(table):
    with pytest.raises(MalformedTable):
        Quandle(table)


def test_trivial_orbits():
    assert orbits(trivial(3)) == ((0,), (1,), (2,))
    assert not is_connected(trivial(2))


def test_dihedral_orbits():
    assert orbits(dihedral(4)) == ((0, 2), (1, 3))
    assert is_connected(dihedral(3)) and is_connected(dihedral(5))


def test_conjugation_s3_is_two_orbits():
    S3 = default_test_quandles()[2]
    assert S3.size == 6 and S3.is_quandle
    assert sorted(len(o) for o in orbits(S3)) == [1, 2, 3]


def test_conjugation_rejects_non_group():
    with pytest.raises(NotAGroup):
        conjugation([[0, 0], [0, 0]])


def test_alexander_matches_dihedral_at_minus_one():
    assert alexander(5, -1).op == dihedral(5).op


def test_make_quandle_dispatch():
    assert make_quandle("dihedral", 3) == dihedral(3)
    with pytest.raises(ValueError):
        make_quandle("nonsense")


def test_check_hom_identity_and_witness():
    Z3 = dihedral(3)
    assert check_hom(Z3, Z3, [0, 1, 2])
    ok, witness = check_hom(Z3, Z3, [0, 0, 1], report=True)
    assert not ok and witness is not None


def test_check_hom_to_trivial():
    # every map into a one-element quandle is a homomorphism
    assert check_hom(dihedral(5), trivial(1), [0] * 5)


def test_file_round_trip():
    for Q in [dihedral(3), trivial(2), default_test_quandles()[2]]:
        assert parse_quandle(format_quandle(Q)) == Q


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.data())
def test_relabel_preserves_axioms(n, data):
    perm = data.draw(st.permutations(list(range(n))))
    Q = dihedral(n).relabel(perm)
    assert Q.is_quandle
    assert check_hom(dihedral(n), Q, perm)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(1, 11))
def test_alexander_is_quandle_when_t_is_unit(n, t):
    from math import gcd
    if gcd(t, n) != 1:
        with pytest.raises(ValueError):
            alexander(n, t)
    else:
        assert alexander(n, t).is_quandle
