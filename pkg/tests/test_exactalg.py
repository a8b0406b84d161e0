from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ as SZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from loopchains.exactalg import (FormalSum, ZZ, QQ, Zmod, SparseIntMatrix, add, matrix_of, parse_ring,
                                 smith_normal_form, homology_step, solve_integer, rank, NotSolvable,
                                 CompositionError, RingMismatch, format_coefficient)


def test_add_cancels_to_empty_sum():
    a = FormalSum({"x": 2})
    b = FormalSum({"x": -2})
    assert len(add(a, b)) == 0


def test_add_distinct_basis_elements():
    s = add(FormalSum({"x": 1}), FormalSum({"y": 1}))
    assert s.items() == [("x", 1), ("y", 1)]


def test_modular_reduction():
    R = Zmod(5)
    s = add(FormalSum({"x": 3}, R), FormalSum({"x": 4}, R))
    assert s.items() == [("x", 2)]


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        add(FormalSum({"x": 1}, ZZ), FormalSum({"x": 1}, QQ))


def test_rationals_normalized():
    s = FormalSum({"x": Fraction(2, 4)}, QQ)
    assert s["x"] == Fraction(1, 2)
    assert format_coefficient(Fraction(-1, 2)) == "-1/2"
    assert format_coefficient(3) == "+3"


def test_parse_ring():
    assert parse_ring("Z") == ZZ
    assert parse_ring("Q") == QQ
    assert parse_ring("Zmod:7") == Zmod(7)
    with pytest.raises(ValueError):
        parse_ring("Zmod:1")
    with pytest.raises(ValueError):
        parse_ring("R")


def test_matrix_of_examples():
    zero = matrix_of({"a": {}, "b": {}}, ["a", "b"], ["a", "b"])
    assert zero.to_dense() == [[0, 0], [0, 0]]
    ident = matrix_of(lambda b: {b: 1}, ["a", "b"], ["a", "b"])
    assert ident == SparseIntMatrix.identity(2)
    d1 = matrix_of({(0, 1): {(0,): -1, (1,): 1}}, [(0, 1)], [(0,), (1,)])
    assert d1.to_dense() == [[-1], [1]]
    with pytest.raises(KeyError):
        matrix_of({"a": {"z": 1}}, ["a"], ["b"])


def test_snf_examples():
    assert smith_normal_form(SparseIntMatrix.from_dense([[2, 4], [6, 8]]))[0] == [2, 4]
    assert smith_normal_form(SparseIntMatrix.identity(3))[0] == [1, 1, 1]
    assert smith_normal_form(SparseIntMatrix(2, 3))[0] == []


def _det(M):
    return Matrix(M.to_dense()).det() if M.nrows else 1


small_matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_transforms_and_sympy_agreement(rows):
    M = SparseIntMatrix.from_dense(rows)
    diag, U, V = smith_normal_form(M)
    D = U @ M @ V
    expected = {(i, i): d for i, d in enumerate(diag)}
    assert D.entries == expected
    assert abs(_det(U)) == 1 and abs(_det(V)) == 1
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    ref = sympy_snf(Matrix(rows), domain=SZZ)
    ref_diag = [abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert sorted(diag) == sorted(ref_diag)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.sampled_from("abcd"), st.integers(-5, 5)),
       st.dictionaries(st.sampled_from("abcd"), st.integers(-5, 5)),
       st.dictionaries(st.sampled_from("abcd"), st.integers(-5, 5)),
       st.integers(-3, 3))
def test_module_axioms(x, y, z, k):
    a, b, c = FormalSum(x), FormalSum(y), FormalSum(z)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert k * (a + b) == k * a + k * b
    assert a - a == FormalSum()


def test_homology_step_examples():
    assert homology_step(SparseIntMatrix(0, 3), SparseIntMatrix(3, 0)) == (3, [])
    # boundary of the triangle: C1 -> C0 and no 2-cells
    d1 = SparseIntMatrix.from_dense([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    assert homology_step(SparseIntMatrix(0, 3), d1) == (1, [])
    assert homology_step(d1, SparseIntMatrix(3, 0)) == (1, [])
    # SNF (1, 2) inside a rank-3 kernel
    d_next = SparseIntMatrix.from_dense([[1, 0], [0, 2], [0, 0]])
    assert homology_step(SparseIntMatrix(0, 3), d_next) == (1, [2])


def test_homology_step_rejects_nonzero_composite():
    with pytest.raises(CompositionError):
        homology_step(SparseIntMatrix.from_dense([[1]]), SparseIntMatrix.from_dense([[1]]))


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_rational_betti_matches_integer_when_torsion_free(rows):
    M = SparseIntMatrix.from_dense(rows)
    b_z, tors = homology_step(SparseIntMatrix(0, M.nrows), M)
    b_q, _ = homology_step(SparseIntMatrix(0, M.nrows), M, QQ)
    if not tors:
        assert b_z == b_q
    assert rank(M) == Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(small_matrices, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_solve_integer_by_substitution(rows, xs):
    M = SparseIntMatrix.from_dense(rows)
    x_true = {j: xs[j] for j in range(M.ncols) if xs[j]}
    b = {}
    for (i, j), v in M.entries.items():
        b[i] = b.get(i, 0) + v * x_true.get(j, 0)
    x = solve_integer(M, {i: v for i, v in b.items() if v})
    got = {}
    for (i, j), v in M.entries.items():
        got[i] = got.get(i, 0) + v * x.get(j, 0)
    assert {i: v for i, v in got.items() if v} == {i: v for i, v in b.items() if v}


def test_solve_integer_detects_divisibility():
    with pytest.raises(NotSolvable):
        solve_integer(SparseIntMatrix.from_dense([[2]]), {0: 1})
    with pytest.raises(NotSolvable):
        solve_integer(SparseIntMatrix.from_dense([[1], [1]]), {0: 1})


def test_modular_homology_needs_prime():
    with pytest.raises(ValueError):
        homology_step(SparseIntMatrix(0, 2), SparseIntMatrix(2, 0), Zmod(4))
