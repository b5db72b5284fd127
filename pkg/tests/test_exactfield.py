from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix as SymMatrix
from sympy import ZZ
from sympy.matrices.normalforms import invariant_factors as sym_invariants

from coringlab.exactfield import (DimensionError, FieldSpec, Matrix, in_span, int_det,
                                  int_matmul, invariant_factors, kernel, rank, rref,
                                  smith_normal_form, solve_linear, span_basis)

F2, F3, F5, Q = FieldSpec.prime(2), FieldSpec.prime(3), FieldSpec.prime(5), FieldSpec.rationals()


def mat(F, rows):
    rows = tuple(tuple(F(x) for x in r) for r in rows)
    return Matrix(F, rows, len(rows[0]) if rows else 0)


# --- fields ---

def test_prime_field_arithmetic():
    assert F3.add(2, 2) == 1
    assert F3.mul(2, 2) == 1
    assert F3.inv(2) == 2
    assert F5.neg(1) == 4
    assert F5.elements() == [0, 1, 2, 3, 4]
    assert F5.units() == [1, 2, 3, 4]


def test_rationals_are_exact():
    assert Q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert Q.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    assert Q.to_json(Fraction(3, 4)) == "3/4"
    assert Q.to_json(Fraction(4, 1)) == 4


def test_field_rejects_composite_and_zero_inverse():
    with pytest.raises(ValueError):
        FieldSpec.prime(4)
    with pytest.raises(ZeroDivisionError):
        F3.inv(0)


# --- solve_linear: spec examples ---

def test_solve_identity():
    sol = solve_linear(Matrix.identity(F2, 2), (1, 0))
    assert sol.particular == (1, 0)
    assert sol.kernel == []


def test_solve_zero_map():
    sol = solve_linear(Matrix.zeros(F2, 2, 2), (0, 0))
    assert sol.particular == (0, 0)
    assert len(sol.kernel) == 2


def test_solve_inconsistent():
    sol = solve_linear(mat(F2, [[1, 1], [0, 0]]), (1, 1))
    assert not sol.solvable
    # the oracle: none of the four vectors works
    assert all(mat(F2, [[1, 1], [0, 0]]).apply(v) != (1, 1) for v in product((0, 1), repeat=2))


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_linear(Matrix.identity(F2, 2), (1, 0, 0))


def test_solve_over_rationals():
    M = mat(Q, [[2, 1], [1, 3]])
    sol = solve_linear(M, (Fraction(1), Fraction(2)))
    assert M.apply(sol.particular) == (1, 2)
    assert sol.particular == (Fraction(1, 5), Fraction(3, 5))


def test_rref_pivots_and_rank():
    R, piv = rref(mat(F3, [[0, 2, 1], [0, 1, 2], [1, 0, 0]]))
    assert piv == [0, 1]
    assert R.rows[0] == (1, 0, 0)
    assert R.rows[1] == (0, 1, 2)
    assert rank(mat(F3, [[1, 2], [2, 1]])) == 1


def test_span_helpers():
    b = span_basis(F2, [(1, 1, 0), (0, 1, 1), (1, 0, 1)], 3)
    assert len(b) == 2
    assert in_span(F2, b, (1, 0, 1))
    assert not in_span(F2, b, (1, 0, 0))
    assert in_span(F2, [], (0, 0))


small = st.integers(min_value=1, max_value=4)


@st.composite
def fp_matrices(draw, p=3):
    m, n = draw(small), draw(small)
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return mat(FieldSpec.prime(p), rows)


@settings(max_examples=80, deadline=None)
@given(fp_matrices())
def test_rank_nullity(M):
    assert rank(M) + len(kernel(M)) == M.ncols
    for v in kernel(M):
        assert not any(M.apply(v))


@settings(max_examples=60, deadline=None)
@given(fp_matrices(p=2), st.data())
def test_solve_matches_brute_force(M, data):
    F = M.field
    b = tuple(data.draw(st.lists(st.integers(0, 1), min_size=M.nrows, max_size=M.nrows)))
    sols = [v for v in product(F.elements(), repeat=M.ncols) if M.apply(v) == b]
    got = solve_linear(M, b)
    assert got.solvable == bool(sols)
    if sols:
        assert M.apply(got.particular) == b
        assert len(sols) == 2 ** len(got.kernel)


@settings(max_examples=60, deadline=None)
@given(fp_matrices(p=5), fp_matrices(p=5))
def test_matmul_associates_with_apply(A, B):
    if A.ncols != B.nrows:
        return
    v = tuple(range(B.ncols))
    v = tuple(x % 5 for x in v)
    assert (A @ B).apply(v) == A.apply(B.apply(v))


# --- Smith normal form ---

def check_snf(M, ncols=None):
    snf = smith_normal_form(M, ncols)
    S, U, V = snf.S, snf.U, snf.V
    if M:
        assert int_matmul(int_matmul(U, M), V) == S
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    d = snf.diagonal
    for i in range(len(S)):
        for j in range(len(S[0]) if S else 0):
            if i != j:
                assert S[i][j] == 0
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return d


def test_snf_already_diagonal():
    assert check_snf([[2, 0], [0, 4]]) == [2, 4]


def test_snf_coprime_diagonal():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_zero():
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert snf.diagonal == [0, 0]
    assert snf.U == [[1, 0], [0, 1]] and snf.V == [[1, 0], [0, 1]]


def test_snf_textbook():
    assert check_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_invariant_factors_pads_columns():
    assert invariant_factors([[2, 0, 0]], 3) == [2, 0, 0]
    assert invariant_factors([], 2) == [0, 0]


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_snf_against_sympy(m, n, data):
    M = data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m))
    d = check_snf(M)
    oracle = [abs(int(x)) for x in sym_invariants(SymMatrix(M), domain=ZZ)]
    assert d == oracle
