from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invhilb.poly import Poly
from invhilb.sl2 import (
    E,
    F,
    H,
    IsotypicTable,
    abcd_ring,
    check_equivariant_ideal,
    expected_table,
    full_ring,
    hilbert_function,
    isotypic_table,
    table_from_dimensions,
    weight_dimensions,
)

A = abcd_ring()
a, b, c, d = A.gens("a", "b", "c", "d")

exps = st.tuples(*(st.integers(0, 2) for _ in range(4)))
polys = st.dictionaries(exps, st.integers(-3, 3), max_size=5).map(lambda t: Poly(A, t))


def test_operators_on_generators():
    assert E(a) == c and E(c) == A.zero()
    assert F(c) == a and F(a) == A.zero()
    assert H(a) == a and H(c) == -c


@settings(max_examples=60, deadline=None)
@given(polys)
def test_commutation_relations(p):
    assert H(E(p)) - E(H(p)) == -2 * E(p)
    assert H(F(p)) - F(H(p)) == 2 * F(p)
    # F E - E F = H; the opposite order gives -H
    assert F(E(p)) - E(F(p)) == H(p)


def test_opposite_commutator_sign_is_wrong():
    assert E(F(a)) - F(E(a)) == -H(a) != H(a)


def test_quadric_is_invariant():
    q = a * d - b * c
    assert E(q).is_zero() and F(q).is_zero() and H(q).is_zero()


def test_abcd_table_frozen():
    t = isotypic_table(A, [a * d - b * c], 6)
    assert t == expected_table(6)
    h = hilbert_function(t, margin=0)
    assert [h[k] for k in range(7)] == [1, 2, 3, 4, 5, 6, 7]


def test_free_abcd_table():
    # without the quadric, degree 2 is V2 + V2 + V0 (Sym^2 of two copies of V1)
    t = isotypic_table(A, [], 3)
    assert [t.mult[dd][2] for dd in range(4)] == [1, 0, 3, 0]
    assert t.degree_dimension(3) == comb(6, 3)


def test_full_ring_degree_one():
    t = isotypic_table(full_ring(), [], 2)
    assert t.mult[1][1] == 6 and t.degree_dimension(2) == 78


def test_truncation_flags():
    h = hilbert_function(expected_table(8))
    assert h.reliable() == list(range(7))


def test_non_equivariant_ideal_detected():
    assert not check_equivariant_ideal([a])
    assert check_equivariant_ideal([a, c])
    with pytest.raises(ValueError):
        table_from_dimensions(weight_dimensions(A, [a], 2), 2)


def test_table_json_round_trip():
    t = expected_table(4)
    assert IsotypicTable.from_json(t.to_json()) == t
    assert IsotypicTable.empty(2).degree_dimension(1) == 0
