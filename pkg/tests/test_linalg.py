"""Exact linear algebra: elimination, nullspaces, solving, matrix inverses."""

import random

import pytest

from sepinv.fields import GF, QQ
from sepinv.linalg import (SingularMatrixError, identity_matrix, in_span,
                           mat_from_rows, mat_inv, mat_mul, mat_pow, mat_vec,
                           nullspace, rank, rref, solve)


def scalars(field, rows):
    return [[field.scalar(x) for x in row] for row in rows]


class TestRref:
    def test_rank_and_pivots_f2(self):
        f2 = GF(2)
        rows = scalars(f2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        _, pivots, r = rref(rows, f2)
        assert r == 2
        assert pivots == [0, 1]

    def test_rational_rref(self):
        rows = scalars(QQ, [[2, 4], [1, 3]])
        reduced, pivots, r = rref(rows, QQ)
        assert r == 2
        assert [[x.rep for x in row] for row in reduced] == [[1, 0], [0, 1]]


class TestNullspace:
    def test_swap_minus_identity_over_f2(self):
        f2 = GF(2)
        rows = scalars(f2, [[1, 1], [1, 1]])  # (swap - id) over F_2
        basis = nullspace(rows, f2)
        assert len(basis) == 1
        assert [x.rep for x in basis[0]] == [1, 1]

    def test_empty_rows_full_space(self):
        f3 = GF(3)
        basis = nullspace([], f3, ncols=3)
        assert len(basis) == 3

    def test_nullspace_vectors_satisfy_system(self):
        rng = random.Random(7)
        f5 = GF(5)
        for _ in range(20):
            rows = scalars(f5, [[rng.randrange(5) for _ in range(4)] for _ in range(3)])
            for vec in nullspace(rows, f5):
                for row in rows:
                    acc = f5.zero
                    for a, x in zip(row, vec):
                        acc = acc + a * x
                    assert acc == f5.zero

    def test_rank_nullity(self):
        rng = random.Random(11)
        f7 = GF(7)
        for _ in range(20):
            rows = scalars(f7, [[rng.randrange(7) for _ in range(5)] for _ in range(3)])
            assert rank(rows, f7) + len(nullspace(rows, f7)) == 5


class TestSolve:
    def test_unique_solution(self):
        f5 = GF(5)
        rows = scalars(f5, [[1, 2], [3, 4]])
        rhs = [f5.scalar(1), f5.scalar(2)]
        x = solve(rows, rhs, f5)
        assert x is not None
        for row, b in zip(rows, rhs):
            acc = f5.zero
            for a, xi in zip(row, x):
                acc = acc + a * xi
            assert acc == b

    def test_inconsistent_returns_none(self):
        f2 = GF(2)
        rows = scalars(f2, [[1, 1], [1, 1]])
        rhs = [f2.one, f2.zero]
        assert solve(rows, rhs, f2) is None

    def test_in_span(self):
        f2 = GF(2)
        span = scalars(f2, [[1, 1, 0], [0, 1, 1]])
        assert in_span(span, [f2.one, f2.zero, f2.one], f2)      # sum of the two
        assert not in_span(span, [f2.zero, f2.one, f2.zero], f2)  # x1x2 analogue


class TestMatrices:
    def test_inverse_round_trip(self):
        rng = random.Random(3)
        f7 = GF(7)
        ident = identity_matrix(f7, 3)
        found = 0
        while found < 10:
            m = mat_from_rows(scalars(f7, [[rng.randrange(7) for _ in range(3)]
                                           for _ in range(3)]))
            try:
                inv = mat_inv(m, f7)
            except SingularMatrixError:
                continue
            found += 1
            assert mat_mul(m, inv, f7) == ident
            assert mat_mul(inv, m, f7) == ident

    def test_singular_rejected(self):
        f2 = GF(2)
        m = mat_from_rows(scalars(f2, [[1, 1], [1, 1]]))
        with pytest.raises(SingularMatrixError):
            mat_inv(m, f2)

    def test_mat_vec_and_pow(self):
        f3 = GF(3)
        shift = mat_from_rows(scalars(f3, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]))
        v = tuple(f3.scalar(c) for c in (1, 2, 0))
        assert [x.rep for x in mat_vec(shift, v, f3)] == [0, 1, 2]
        assert mat_pow(shift, 3, f3) == identity_matrix(f3, 3)
        assert mat_pow(shift, -1, f3) == mat_inv(shift, f3)
