from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invhilb.exact import (
    Matrix,
    exp_nilpotent,
    kernel,
    kernel_matrix,
    matrix_from_json,
    matrix_to_json,
    minor2,
    pfaffian4,
    principal_pfaffians,
    rational_from_str,
    rational_to_str,
    rref,
    row_basis,
    solve,
    span_contains,
    span_equal,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


def test_rational_strings():
    assert rational_to_str(Fraction(-3, 4)) == "-3/4"
    assert rational_to_str(Fraction(2)) == "2"
    assert rational_from_str("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        rational_from_str("0.5x")


def test_rref_small():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    r, rank, piv = rref(m)
    assert rank == 2 and piv == [0, 1]
    assert r == Matrix([[1, 0, 1], [0, 1, 1], [0, 0, 0]])


def test_kernel_and_solve():
    m = Matrix([[1, 1, 0], [0, 1, 1]])
    ker = kernel(m)
    assert len(ker) == 1
    assert m.apply(ker[0]) == (0, 0)
    x = solve(m, (2, 3))
    assert m.apply(x) == (2, 3)
    assert solve(Matrix([[1, 1], [1, 1]]), (1, 2)) is None


def test_minor2_indexing():
    m = [[1, 2, 3], [4, 5, 6]]
    assert minor2(m, 1, 2) == 1 * 5 - 2 * 4
    assert minor2(m, 2, 1) == -(1 * 5 - 2 * 4)
    with pytest.raises(ValueError):
        minor2(m, 2, 2)
    with pytest.raises(IndexError):
        minor2(m, 1, 4)


def test_pfaffian_of_standard_form():
    m = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    assert pfaffian4(m) == 1
    assert m.det() == pfaffian4(m) ** 2
    with pytest.raises(ValueError):
        pfaffian4(Matrix.identity(4))


def test_principal_pfaffians_count():
    a = Matrix([[0 if i == j else (i - j) for j in range(6)] for i in range(6)])
    assert len(principal_pfaffians(a)) == 15


def test_exp_nilpotent():
    n = Matrix.elementary(3, 0, 2, 5)
    assert exp_nilpotent(n) == Matrix.identity(3) + n
    with pytest.raises(ValueError):
        exp_nilpotent(Matrix.identity(2))


def test_json_round_trip():
    m = Matrix([[Fraction(1, 3), -2], [0, Fraction(7, 2)]])
    assert matrix_from_json(matrix_to_json(m)) == m
    assert m.to_json() == [["1/3", "-2"], ["0", "7/2"]]


@settings(max_examples=40, deadline=None)
@given(matrices(4, 5))
def test_rank_nullity(m):
    assert m.rank() + len(kernel(m)) == 5
    for v in kernel(m):
        assert not any(m.apply(v))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 3))
def test_inverse_and_det(m):
    if m.det() == 0:
        assert m.rank() < 3
        with pytest.raises(ZeroDivisionError):
            m.inverse()
    else:
        assert m @ m.inverse() == Matrix.identity(3)


@settings(max_examples=30, deadline=None)
@given(matrices(3, 3), matrices(3, 3))
def test_det_multiplicative(a, b):
    assert (a @ b).det() == a.det() * b.det()


@settings(max_examples=30, deadline=None)
@given(matrices(3, 6))
def test_row_basis_spans(m):
    b = row_basis(m)
    assert span_equal(b, m)
    assert b.nrows == m.rank()
    if m.rank() < 6:
        assert span_contains(kernel_matrix(kernel_matrix(m)), m)
