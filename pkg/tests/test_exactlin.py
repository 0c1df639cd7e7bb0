from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from laurentia.exactlin import (Field, Mat, NoSolution, QQ, Subspace, kernel, kernel_vectors, matmul,
                                rank, rank_rows, rref, solve)

from oracles import brute_rank
from strategies import matrices

primes = st.sampled_from([2, 3, 5, 7])


def test_field_validation():
    with pytest.raises(ValueError):
        Field(4)
    assert Field(5)(Fraction(1, 2)) == 3
    assert QQ.inv(2) == Fraction(1, 2)


@given(matrices())
def test_rank_matches_sympy_over_q(rows):
    assert rank_rows(rows, len(rows[0]), QQ) == brute_rank(rows)


@given(matrices(), primes)
def test_rank_matches_sympy_over_fp(rows, p):
    F = Field(p)
    assert rank_rows([[F(x) for x in r] for r in rows], len(rows[0]), F) == brute_rank(rows, p)


@given(matrices(), st.sampled_from([0, 3, 5]))
def test_kernel_vectors_are_independent_and_killed(rows, p):
    F = Field(p)
    rows = [[F(x) for x in r] for r in rows]
    n = len(rows[0])
    ker = kernel_vectors(rows, n, F)
    assert len(ker) == n - rank_rows(rows, n, F)
    for v in ker:
        assert all(F.norm(sum(a * b for a, b in zip(r, v))) == 0 for r in rows)
    assert rank_rows(ker, n, F) == len(ker)


@given(matrices())
def test_rref_is_idempotent(rows):
    m = Mat.from_rows(rows, QQ)
    red, piv, r = rref(m)
    red2, piv2, r2 = rref(red)
    assert red == red2 and piv == piv2 and r == r2 == rank(m)


@given(matrices(max_rows=4, max_cols=4), st.sampled_from([0, 5]))
def test_solve_or_certificate(rows, p):
    F = Field(p)
    rows = [[F(x) for x in r] for r in rows]
    m = Mat.from_rows(rows, F)
    rhs = Mat.from_rows([[F(i + 1)] for i in range(m.rows)], F)
    try:
        x = solve(m, rhs)
    except NoSolution as e:
        y = e.certificate
        # y annihilates the columns of m but not rhs
        for j in range(m.cols):
            assert F.norm(sum(y[i] * rows[i][j] for i in range(m.rows))) == 0
        assert F.norm(sum(y[i] * rhs.data[i][0] for i in range(m.rows))) != 0
    else:
        assert m @ x == rhs


def test_kernel_matrix_shape():
    m = Mat.from_rows([[1, 1, 0], [0, 0, 1]], QQ)
    K = kernel(m)
    assert (K.rows, K.cols) == (3, 1)
    assert all(x == 0 for x in (m @ K).data[0] + (m @ K).data[1])


@given(matrices(max_cols=4), matrices(max_cols=4))
def test_subspace_intersection_dimension(a, b):
    n = min(len(a[0]), len(b[0]))
    a = [r[:n] for r in a]
    b = [r[:n] for r in b]
    U, W = Subspace(n, QQ, a), Subspace(n, QQ, b)
    S = U.intersection(W)
    assert S <= U and S <= W
    assert S.dim == U.dim + W.dim - U.extended(b).dim


def test_matmul_over_fp():
    F = Field(3)
    assert [list(r) for r in matmul([[1, 2]], [[2], [2]], F)] == [[0]]
