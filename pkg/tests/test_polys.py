"""Polynomial ring tests: canonical form, evaluation as a ring homomorphism,
linear-substitution contravariance, homogeneous slice bases, and polarization
with its reconstruction identity."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from sepinv.fields import GF, QQ
from sepinv.linalg import mat_from_rows, mat_mul, rank
from sepinv.polys import (Polynomial, elementary_symmetric, monomial_basis,
                          monomials_of_degree, polarize)


def random_poly(rng, field, nvars, max_degree, terms=4):
    p = Polynomial.zero(field, nvars)
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randrange(max_degree + 1)):
            exps[rng.randrange(nvars)] += 1
        coeff = field.scalar(rng.randrange(1, field.q if field.p else 7))
        p = p + Polynomial.from_monomial(field, nvars, tuple(exps), coeff)
    return p


def random_invertible(rng, field, n):
    from sepinv.linalg import SingularMatrixError, mat_inv
    while True:
        m = mat_from_rows([[field.scalar(rng.randrange(field.q)) for _ in range(n)]
                           for _ in range(n)])
        try:
            mat_inv(m, field)
            return m
        except SingularMatrixError:
            continue


class TestArithmetic:
    def test_char2_square_collapses_cross_terms(self):
        f2 = GF(2)
        x1 = Polynomial.variable(f2, 2, 0)
        x2 = Polynomial.variable(f2, 2, 1)
        assert (x1 + x2) ** 2 == x1 ** 2 + x2 ** 2

    def test_multiplicative_identities(self):
        f5 = GF(5)
        rng = random.Random(0)
        f = random_poly(rng, f5, 3, 3)
        assert f * Polynomial.one(f5, 3) == f
        assert f * Polynomial.zero(f5, 3) == Polynomial.zero(f5, 3)
        assert (f - f).is_zero()

    def test_no_zero_coefficients_stored(self):
        f3 = GF(3)
        x = Polynomial.variable(f3, 1, 0)
        g = x + x + x  # 3x = 0
        assert g.terms == {}
        assert g.degree() == -1

    def test_ring_axioms_random(self):
        rng = random.Random(12)
        for field in (GF(2), GF(7), QQ):
            for _ in range(10):
                f = random_poly(rng, field, 2, 3)
                g = random_poly(rng, field, 2, 3)
                h = random_poly(rng, field, 2, 3)
                assert f + g == g + f
                assert f * g == g * f
                assert f * (g + h) == f * g + f * h
                assert (f * g) * h == f * (g * h)


class TestEvaluation:
    def test_spec_points(self):
        f2 = GF(2)
        x1x2 = Polynomial.from_monomial(f2, 2, (1, 1))
        assert x1x2.evaluate([f2.one, f2.one]) == f2.one
        # x0^2 y1 + x1^2 y0 at (0, 1, 1, 0) over F_2
        f = (Polynomial.from_monomial(f2, 4, (2, 0, 0, 1))
             + Polynomial.from_monomial(f2, 4, (0, 2, 1, 0)))
        assert f.evaluate([f2.zero, f2.one, f2.one, f2.zero]) == f2.one
        zero = Polynomial.zero(f2, 2)
        assert zero.evaluate([f2.one, f2.zero]) == f2.zero

    def test_evaluation_is_ring_homomorphism(self):
        rng = random.Random(5)
        for field in (GF(3, 2), GF(7), GF(2, 3)):
            elems = field.elements()
            for _ in range(15):
                f = random_poly(rng, field, 3, 3)
                g = random_poly(rng, field, 3, 3)
                pt = [elems[rng.randrange(len(elems))] for _ in range(3)]
                assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
                assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)

    def test_length_mismatch(self):
        f2 = GF(2)
        with pytest.raises(ValueError):
            Polynomial.variable(f2, 2, 0).evaluate([f2.one])


class TestSubstitution:
    def test_variable_swap(self):
        f5 = GF(5)
        x1 = Polynomial.variable(f5, 2, 0)
        x2 = Polynomial.variable(f5, 2, 1)
        swap = mat_from_rows([[f5.zero, f5.one], [f5.one, f5.zero]])
        assert x1.substitute_linear(swap) == x2

    def test_identity_fixes_everything(self):
        from sepinv.linalg import identity_matrix
        rng = random.Random(9)
        f7 = GF(7)
        ident = identity_matrix(f7, 3)
        for _ in range(10):
            f = random_poly(rng, f7, 3, 4)
            assert f.substitute_linear(ident) == f

    def test_composition_contravariance_f5(self):
        # (f o A) o B == f o (A*B) for random f and invertible A, B, dim <= 4
        rng = random.Random(42)
        f5 = GF(5)
        for n in (2, 3, 4):
            for _ in range(8):
                f = random_poly(rng, f5, n, 3)
                a = random_invertible(rng, f5, n)
                b = random_invertible(rng, f5, n)
                lhs = f.substitute_linear(a).substitute_linear(b)
                rhs = f.substitute_linear(mat_mul(a, b, f5))
                assert lhs == rhs

    def test_substitution_agrees_with_pointwise(self):
        rng = random.Random(23)
        f3 = GF(3)
        elems = f3.elements()
        for _ in range(10):
            f = random_poly(rng, f3, 3, 3)
            a = random_invertible(rng, f3, 3)
            g = f.substitute_linear(a)
            for pt in itertools.product(elems, repeat=3):
                from sepinv.linalg import mat_vec
                assert g.evaluate(pt) == f.evaluate(mat_vec(a, pt, f3))


class TestHomogeneousBasis:
    def test_small_bases(self):
        basis = monomial_basis(2, 2)
        assert basis == [(2, 0), (1, 1), (0, 2)]
        assert monomial_basis(3, 0) == [(0, 0, 0)]

    @pytest.mark.parametrize("n,d", [(2, 3), (3, 4), (6, 4), (4, 5)])
    def test_counts(self, n, d):
        basis = monomial_basis(n, d)
        assert len(basis) == math.comb(n + d - 1, d)
        assert len(set(basis)) == len(basis)
        assert all(sum(m) == d for m in basis)

    def test_graded_lex_within_degree(self):
        basis = monomial_basis(3, 2)
        assert basis == sorted(basis, reverse=True)


class TestPolarization:
    def test_square_of_one_variable(self):
        x = Polynomial.variable(QQ, 1, 0)
        comps = polarize(x ** 2, 2)
        u1 = Polynomial.variable(QQ, 2, 0)
        u2 = Polynomial.variable(QQ, 2, 1)
        assert comps[(2, 0)] == u1 ** 2
        assert comps[(1, 1)] == u1 * u2 * 2
        assert comps[(0, 2)] == u2 ** 2

    def test_linear_polynomial(self):
        x = Polynomial.variable(QQ, 1, 0)
        comps = polarize(x, 2)
        assert set(comps) == {(1, 0), (0, 1)}
        assert comps[(1, 0)] == Polynomial.variable(QQ, 2, 0)
        assert comps[(0, 1)] == Polynomial.variable(QQ, 2, 1)

    def test_product_mixed_component(self):
        # f = u1 u2 on K^2, copies (u1,u2),(v1,v2): the (1,1) part is u1 v2 + u2 v1
        f = Polynomial.from_monomial(QQ, 2, (1, 1))
        comps = polarize(f, 2)
        expected = (Polynomial.from_monomial(QQ, 4, (1, 0, 0, 1))
                    + Polynomial.from_monomial(QQ, 4, (0, 1, 1, 0)))
        assert comps[(1, 1)] == expected

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            polarize(Polynomial.zero(QQ, 2), 2)

    def test_component_degrees_bounded(self):
        rng = random.Random(77)
        for field in (GF(7), QQ):
            for _ in range(8):
                f = random_poly(rng, field, 3, 4)
                if f.is_zero():
                    continue
                for comp in polarize(f, 2).values():
                    assert comp.degree() <= f.degree()

    @pytest.mark.parametrize("field", [GF(7), QQ], ids=repr)
    def test_reconstruction_identity(self, field):
        # sum_i t^i * f_i(u_1..u_n) == f(t_1 u_1 + ... + t_n u_n) numerically
        rng = random.Random(101)
        for nvars in (1, 2, 3):
            for ncopies in (2, 3):
                f = random_poly(rng, field, nvars, 4)
                if f.is_zero():
                    continue
                comps = polarize(f, ncopies)
                t_vals = [field.scalar(rng.randrange(1, 7)) for _ in range(ncopies)]
                copies = [[field.scalar(rng.randrange(7)) for _ in range(nvars)]
                          for _ in range(ncopies)]
                point = tuple(x for copy in copies for x in copy)
                total = field.zero
                for idx, comp in comps.items():
                    weight = field.one
                    for t, e in zip(t_vals, idx):
                        weight = weight * t ** e
                    total = total + weight * comp.evaluate(point)
                combined = [sum((t_vals[i] * copies[i][j] for i in range(ncopies)),
                                field.zero) for j in range(nvars)]
                assert total == f.evaluate(combined)

    def test_char2_components_reduced(self):
        # over F_2 the cross term of a square vanishes and is dropped
        f2 = GF(2)
        x = Polynomial.variable(f2, 1, 0)
        comps = polarize(x ** 2, 2)
        assert (1, 1) not in comps
        assert set(comps) == {(2, 0), (0, 2)}


class TestElementarySymmetric:
    def test_values(self):
        e2 = elementary_symmetric(QQ, 3, 2)
        assert e2.evaluate([QQ.scalar(1), QQ.scalar(2), QQ.scalar(3)]).rep == Fraction(11)
        e0 = elementary_symmetric(QQ, 3, 0)
        assert e0 == Polynomial.one(QQ, 3)

    def test_term_count(self):
        assert len(elementary_symmetric(GF(2), 4, 2).terms) == 6


class TestTextFormat:
    def test_canonical_order_and_coefficients(self):
        f3 = GF(3)
        f = (Polynomial.from_monomial(f3, 2, (0, 1), 2)
             + Polynomial.from_monomial(f3, 2, (2, 0))
             + Polynomial.from_monomial(f3, 2, (1, 1)))
        assert f.to_text() == "1*x1^2 + 1*x1*x2 + 2*x2"

    def test_extension_coefficients(self):
        f4 = GF(2, 2)
        f = Polynomial.from_monomial(f4, 1, (2,), f4.gen + 1)
        assert f.to_text() == "[1,1]*x1^2"

    def test_zero(self):
        assert Polynomial.zero(QQ, 2).to_text() == "0"
