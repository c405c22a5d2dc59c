from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from securegroupcast import (Field, FieldTooSmallError, FMatrix, NoSolutionError,
                             cauchy, col_space_contains, hstack, prefix_ranks,
                             rank, rref, solve_right, vstack)

F2 = Field(2)
F5 = Field(5)


def M(field, rows):
    return FMatrix(field, np.array(rows, dtype=np.int64))


# -- rank ------------------------------------------------------------------

def test_rank_empty():
    assert rank(FMatrix.zeros(F2, 0, 0)) == 0


def test_rank_identity():
    assert rank(FMatrix.identity(F2, 3)) == 3


def test_rank_equal_rows():
    assert rank(M(F2, [[1, 1], [1, 1]])) == 1


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]),
       st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_equals_transpose_rank(p, r, c, data):
    f = Field(p)
    entries = data.draw(st.lists(st.integers(0, p - 1),
                                 min_size=r * c, max_size=r * c))
    m = FMatrix(f, np.array(entries).reshape(r, c))
    assert rank(m) == rank(m.transpose())


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 6),
       st.integers(0, 6), st.data())
def test_prefix_ranks_match_independent_ranks(p, r, c1, c2, data):
    f = Field(p)
    entries = data.draw(st.lists(st.integers(0, p - 1),
                                 min_size=r * (c1 + c2), max_size=r * (c1 + c2)))
    m = FMatrix(f, np.array(entries).reshape(r, c1 + c2))
    left = FMatrix(f, m.array[:, :c1])
    got = prefix_ranks(m, c1)
    assert got == (rank(left), rank(m))


# -- rref / solve ------------------------------------------------------------

def test_rref_pivots_are_leading_ones():
    m = M(F5, [[2, 4, 1], [1, 2, 3], [3, 1, 0]])
    red, pivots = rref(m)
    for i, col in enumerate(pivots):
        assert red.entry(i, col) == 1
        for r in range(red.rows):
            if r != i:
                assert red.entry(r, col) == 0


def test_solve_right_identity():
    i2 = FMatrix.identity(F2, 2)
    assert solve_right(i2, i2) == i2


def test_solve_right_no_solution():
    a = M(F2, [[1], [0]])
    b = M(F2, [[0], [1]])
    with pytest.raises(NoSolutionError):
        solve_right(a, b)


def test_solve_right_underdetermined():
    a = M(F2, [[1, 1]])
    b = M(F2, [[1]])
    x = solve_right(a, b)
    assert a @ x == b


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 4),
       st.integers(1, 3), st.data())
def test_solve_right_recovers_consistent_systems(p, r, c, k, data):
    f = Field(p)
    a_entries = data.draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    x_entries = data.draw(st.lists(st.integers(0, p - 1), min_size=c * k, max_size=c * k))
    a = FMatrix(f, np.array(a_entries).reshape(r, c))
    x_true = FMatrix(f, np.array(x_entries).reshape(c, k))
    b = a @ x_true
    x = solve_right(a, b)
    assert a @ x == b


# -- column space ------------------------------------------------------------

def test_col_space_contains_full_space():
    assert col_space_contains(FMatrix.identity(F2, 2), M(F2, [[1, 0], [1, 1]]))


def test_col_space_contains_zero_space():
    empty = FMatrix.zeros(F2, 2, 0)
    assert not col_space_contains(empty, M(F2, [[1], [0]]))


def test_col_space_contains_same_column():
    col = M(F2, [[1], [1]])
    assert col_space_contains(col, col)


# -- stacking ------------------------------------------------------------------

def test_vstack_hstack_shapes():
    a = FMatrix.zeros(F2, 1, 2)
    b = FMatrix.zeros(F2, 2, 2)
    assert vstack([a, b]).rows == 3 and vstack([a, b]).cols == 2
    c = FMatrix.zeros(F2, 2, 1)
    d = FMatrix.zeros(F2, 2, 3)
    assert hstack([c, d]).cols == 4


def test_vstack_dimension_mismatch():
    with pytest.raises(ValueError):
        vstack([FMatrix.zeros(F2, 1, 2), FMatrix.zeros(F2, 1, 3)])


def test_mixed_fields_refused():
    with pytest.raises(ValueError):
        hstack([FMatrix.zeros(F2, 1, 1), FMatrix.zeros(F5, 1, 1)])
    with pytest.raises(ValueError):
        FMatrix.identity(F2, 2) @ FMatrix.identity(F5, 2)


# -- cauchy ------------------------------------------------------------------

def test_cauchy_1x1_gf3():
    # points a_0 = 0, b_0 = 1; entry = inv(0 - 1 mod 3) = inv(2) = 2
    got = cauchy(1, 1, Field(3))
    assert got.tolist() == [[2]]


def test_cauchy_2x2_gf5_all_submatrices_nonsingular():
    m = cauchy(2, 2, F5)
    for i, j in product(range(2), repeat=2):
        assert m.entry(i, j) != 0
    assert rank(m) == 2


def test_cauchy_field_too_small():
    with pytest.raises(FieldTooSmallError):
        cauchy(3, 4, F5)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_cauchy_mds_exhaustive(p):
    """Every square submatrix of a Cauchy matrix has full rank."""
    f = Field(p)
    for r in range(1, 5):
        for c in range(1, 5):
            if r + c > p:
                continue
            m = cauchy(r, c, f)
            for k in range(1, min(r, c) + 1):
                for rows in combinations(range(r), k):
                    for cols in combinations(range(c), k):
                        assert rank(m.submatrix(rows, cols)) == k


def test_matrices_are_immutable():
    m = FMatrix.identity(F2, 2)
    with pytest.raises(ValueError):
        m.array[0, 0] = 0
