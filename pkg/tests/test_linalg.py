from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from christol.errors import DimensionError, NotInvariantError
from christol.gf import GF
from christol.linalg import (
    MatFq,
    identity,
    mat_mul,
    mat_pow,
    mat_sub,
    monomial_coords,
    nullspace_basis,
    operator_matrix,
    rank,
    rref,
)
from christol.polyalg import UniLaurent, cartier_uni

F2, F3, F4 = GF(2), GF(3), GF(2, 2)


def mat_strategy(F, max_n=4):
    return st.integers(1, max_n).flatmap(lambda r: st.integers(1, max_n).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, F.q - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r))).map(lambda rows: MatFq.from_rows(F, rows))


def brute_kernel_size(m: MatFq) -> int:
    F = m.field
    return sum(1 for v in itertools.product(range(F.q), repeat=m.cols)
               if not any(m.apply(list(v))))


def test_from_rows_and_access():
    m = MatFq.from_rows(F3, [[1, 2, 0], [0, 4, -1]])
    assert m.to_rows() == [[1, 2, 0], [0, 1, 2]]
    assert m[1, 2] == 2 and m.col(1) == [2, 1]
    assert m.transpose().to_rows() == [[1, 0], [2, 1], [0, 2]]
    with pytest.raises(DimensionError):
        MatFq.from_rows(F3, [[1, 2], [1]])
    with pytest.raises(DimensionError):
        mat_mul(m, m)


@settings(max_examples=60, deadline=None)
@given(mat_strategy(F3))
def test_rank_nullity_and_brute_kernel(m):
    basis = nullspace_basis(m)
    assert rank(m) + len(basis) == m.cols
    assert F3.q ** len(basis) == brute_kernel_size(m)
    for v in basis:
        assert not any(m.apply(v))


@settings(max_examples=30, deadline=None)
@given(mat_strategy(F4, 3))
def test_rank_nullity_extension(m):
    basis = nullspace_basis(m)
    assert F4.q ** len(basis) == brute_kernel_size(m)


@settings(max_examples=40, deadline=None)
@given(mat_strategy(F2))
def test_rref_is_reduced(m):
    a, pivots = rref(m)
    for r, c in enumerate(pivots):
        assert a[r][c] == 1
        assert all(a[i][c] == 0 for i in range(m.rows) if i != r)
    assert pivots == sorted(pivots)
    for r in range(len(pivots), m.rows):
        assert not any(a[r])


def test_nullspace_canonical_form():
    m = MatFq.from_rows(F3, [[1, 1, 0, 2]])
    assert nullspace_basis(m) == [[2, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3),
       st.integers(0, 12))
def test_mat_pow_matches_repeated_product(rows, n):
    m = MatFq.from_rows(F3, rows)
    want = identity(F3, 3)
    for _ in range(n):
        want = mat_mul(want, m)
    assert mat_pow(m, n) == want
    assert mat_sub(want, want) == MatFq.from_rows(F3, [[0] * 3] * 3)


def test_operator_matrix_of_cartier():
    # Lambda_0 on span{1, z, ..., z^5} over F_2 maps z^(2k) -> z^k
    basis = [UniLaurent.monomial(F2, j) for j in range(6)]
    M = operator_matrix(lambda f: cartier_uni(0, f), basis, monomial_coords(list(range(6))))
    assert [M.col(j) for j in range(6)] == [
        [1, 0, 0, 0, 0, 0], [0] * 6, [0, 1, 0, 0, 0, 0],
        [0] * 6, [0, 0, 1, 0, 0, 0], [0] * 6]


def test_operator_matrix_not_invariant():
    basis = [UniLaurent.monomial(F2, j) for j in range(2)]
    with pytest.raises(NotInvariantError):
        operator_matrix(lambda f: f.shift(1), basis, monomial_coords([0, 1]))
