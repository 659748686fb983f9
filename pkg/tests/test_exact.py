"""Exact scalars and deterministic linear algebra."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diffhom.exact import (ParamPoly, SparseMatrix, det, det_expansion,
                           divexact, nullspace_basis, rank)

F = Fraction


def test_rank_empty_matrix():
    assert rank(SparseMatrix(0, 0)) == 0


def test_rank_identity():
    m = SparseMatrix.from_dense([[1 if i == j else 0 for j in range(3)] for i in range(3)])
    assert rank(m) == 3


def test_rank_dependent_rows():
    assert rank(SparseMatrix.from_dense([[F(1), F(2)], [F(2), F(4)]])) == 1


def test_nullspace_identity_empty():
    m = SparseMatrix.from_dense([[1, 0], [0, 1]])
    assert nullspace_basis(m) == []


def test_nullspace_single_relation():
    m = SparseMatrix.from_dense([[F(1), F(1)]])
    assert nullspace_basis(m) == [(F(1), F(-1))]


def test_nullspace_zero_matrix():
    m = SparseMatrix(1, 3)
    basis = nullspace_basis(m)
    assert len(basis) == 3
    assert basis[0] == (F(1), F(0), F(0))


def test_nullspace_vectors_annihilate():
    m = SparseMatrix.from_dense([[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]])
    for v in nullspace_basis(m):
        rows = m.row_dicts()
        for row in rows:
            assert sum(c * v[j] for j, c in row.items()) == 0


def test_det_single_parameter():
    mu = ParamPoly.var("mu0")
    assert det(SparseMatrix.from_dense([[mu]])) == mu


def test_det_two_by_two():
    t = ParamPoly.var("t")
    m = SparseMatrix.from_dense([[ParamPoly.const(1), t], [t, ParamPoly.const(1)]])
    assert det(m) == ParamPoly.const(1) - t ** 2


def test_det_repeated_rows_is_zero():
    m = SparseMatrix.from_dense([[1, 1, 1]] * 3)
    assert not det(m)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det(SparseMatrix(2, 3))


def test_det_matches_expansion():
    t = ParamPoly.var("t")
    u = ParamPoly.var("u")
    rows = [[t, u, ParamPoly.const(1)],
            [ParamPoly.const(2), t * u, u],
            [t + u, ParamPoly.const(0), t]]
    m = SparseMatrix.from_dense(rows)
    assert det(m) == det_expansion(rows, ParamPoly.const(0), ParamPoly.const(1))


def test_divexact_roundtrip():
    t = ParamPoly.var("t")
    u = ParamPoly.var("u")
    a = (t + u) ** 2 * (t - ParamPoly.const(3))
    b = t + u
    assert divexact(a, b) == (t + u) * (t - ParamPoly.const(3))
    with pytest.raises(ArithmeticError):
        divexact(t * t + ParamPoly.const(1), t + u)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(a=rationals.filter(bool), b=rationals.filter(bool))
def test_rational_arithmetic_exact(a, b):
    assert (a / b) * (b / a) == 1


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if draw(st.booleans()):
                entries[(r, c)] = draw(rationals)
    return SparseMatrix(rows, cols, entries)


@given(m=small_matrices())
@settings(max_examples=60)
def test_rank_plus_nullity(m):
    assert rank(m) + len(nullspace_basis(m)) == m.cols


@given(m=small_matrices(), data=st.data())
@settings(max_examples=60)
def test_insertion_order_does_not_matter(m, data):
    items = list(m.entries.items())
    shuffled = data.draw(st.permutations(items))
    m2 = SparseMatrix(m.rows, m.cols, dict(shuffled))
    assert rank(m) == rank(m2)
    assert nullspace_basis(m) == nullspace_basis(m2)


@given(m=small_matrices(), data=st.data())
@settings(max_examples=60)
def test_row_permutation_preserves_kernel(m, data):
    perm = data.draw(st.permutations(range(m.rows)))
    entries = {(perm[r], c): v for (r, c), v in m.entries.items()}
    m2 = SparseMatrix(m.rows, m.cols, entries)
    assert rank(m) == rank(m2)
    assert nullspace_basis(m) == nullspace_basis(m2)


@given(data=st.data())
@settings(max_examples=40)
def test_det_row_swap_changes_sign(data):
    n = data.draw(st.integers(2, 4))
    rows = [[data.draw(rationals) for _ in range(n)] for _ in range(n)]
    i, j = data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda t: t[0] != t[1]))
    swapped = list(rows)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    d1 = det(SparseMatrix.from_dense(rows))
    d2 = det(SparseMatrix.from_dense(swapped))
    assert d1 == -d2
