from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from catext.exactlin import Echelon, FieldSpec, Matrix, kernel_basis, rank, rref, solve, solve_matrix

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()

FIELDS = [F2, F3, F5, QQ]


def test_field_spec_invariants():
    assert F2.characteristic == 2
    assert QQ.characteristic == 0
    with pytest.raises(ValueError):
        FieldSpec.prime(4)
    with pytest.raises(ValueError):
        FieldSpec.prime(1)
    with pytest.raises(ValueError):
        FieldSpec("rationals", 3)


def test_scalar_ops():
    assert F3.inv(2) == 2
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert F5.coerce(-1) == 4
    assert QQ.coerce(2) == Fraction(2)
    with pytest.raises(ZeroDivisionError):
        F2.inv(0)


def test_rref_identity_f2():
    m = Matrix.identity(F2, 2)
    r, piv = rref(m)
    assert r == m
    assert piv == [0, 1]


def test_rref_rank_one_f2():
    r, piv = rref(Matrix.make(F2, [[1, 1], [1, 1]]))
    assert r.a.tolist() == [[1, 1], [0, 0]]
    assert piv == [0]


def test_rref_empty():
    m = Matrix.zeros(F3, 0, 4)
    r, piv = rref(m)
    assert r.rows == 0 and r.cols == 4
    assert piv == []


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(F5, 3)).rows == 0


def test_kernel_zero_matrix_full():
    k = kernel_basis(Matrix.zeros(F3, 2, 2))
    assert k.rows == 2


def test_kernel_row_f2():
    k = kernel_basis(Matrix.make(F2, [[1, 1]]))
    assert k.a.tolist() == [[1, 1]]


def test_solve_identity():
    x = solve(Matrix.identity(F3, 3), [1, 2, 0])
    assert x.tolist() == [1, 2, 0]


def test_solve_inconsistent():
    assert solve(Matrix.zeros(F2, 2, 2), [1, 0]) is None


def test_solve_back_substitution():
    x = solve(Matrix.make(F2, [[1, 1], [0, 1]]), [0, 1])
    assert x.tolist() == [1, 1]


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(Matrix.identity(F2, 2), [1, 0, 0])


def _random_matrix(field, rows, cols, entries):
    return Matrix(field, field.array(np.array(entries).reshape(rows, cols)))


@st.composite
def matrices(draw, fields=FIELDS):
    field = draw(st.sampled_from(fields))
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(0, 5))
    entries = draw(st.lists(st.integers(-6, 6), min_size=rows * cols,
                            max_size=rows * cols))
    return _random_matrix(field, rows, cols, entries)


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).rows == m.cols


@given(matrices())
def test_rref_idempotent(m):
    r1, p1 = rref(m)
    r2, p2 = rref(r1)
    assert r1 == r2 and p1 == p2


@given(matrices())
def test_kernel_vectors_annihilate(m):
    k = kernel_basis(m)
    for i in range(k.rows):
        prod = m.field.matmul(m.a, k.a[i])
        assert m.field.is_zero(prod)


@given(matrices(), st.lists(st.integers(-6, 6), min_size=5, max_size=5))
def test_solve_exact_on_consistent_systems(m, xs):
    x = m.field.array(xs[:m.cols])
    b = m.field.matmul(m.a, x)
    got = solve(m, b)
    assert got is not None
    assert m.field.equal(m.field.matmul(m.a, got), b)


def test_solve_matrix_consistency():
    a = Matrix.make(F3, [[1, 2], [0, 1]])
    b = Matrix.make(F3, [[1, 0], [2, 2]])
    x = solve_matrix(a, b)
    assert F3.equal(F3.matmul(a.a, x.a), b.a)


def test_echelon_membership():
    e = Echelon(F2, 3)
    assert e.add([1, 1, 0])
    assert not e.add([1, 1, 0])
    assert e.add([0, 0, 1])
    assert e.contains([1, 1, 1])
    assert not e.contains([1, 0, 0])
    assert e.rank == 2
    assert e.basis_matrix().rows == 2


def test_vector_enumeration_guard():
    assert len(F2.vectors(3)) == 8
    with pytest.raises(ValueError):
        QQ.vectors(1)
    with pytest.raises(ValueError):
        F5.vectors(20)


@given(st.sampled_from(FIELDS), st.integers(1, 5),
       st.lists(st.lists(st.integers(-6, 6), min_size=5, max_size=5), max_size=8))
def test_echelon_matches_rref_rank(field, dim, rows):
    rows = [r[:dim] for r in rows]
    e = Echelon(field, dim)
    for r in rows:
        before = e.contains(r)
        added = e.add(r)
        assert added != before  # enlarges the span iff not already inside
        assert e.contains(r)
    expected = rank(Matrix.make(field, rows)) if rows else 0
    assert e.rank == expected
    basis = e.basis_matrix()
    assert basis.rows == expected
    for i in range(basis.rows):
        assert e.contains(basis.a[i])
