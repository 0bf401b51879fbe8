"""Group enumeration, explicit module constructors and their defining
relations, induced modules, and the parametric families."""

import itertools

import pytest

from sepinv.fields import GF, QQ
from sepinv.linalg import identity_matrix, mat_from_rows, mat_inv, mat_mul, mat_pow
from sepinv.reps import (ConstructionError, CosetDecomposition,
                         GroupCapExceededError, Representation, SubgroupAction,
                         additive_module, cyclic_module, dihedral_module,
                         dual_sym_module, element_orders, enumerate_group,
                         induced_module, is_normal, permutation_module,
                         regular_representation, right_cosets,
                         subgroup_closure, torus_module, twist_pair_module)


def s3_perm(field):
    return permutation_module(field, 3, [[1, 0, 2], [1, 2, 0]], label="S3")


class TestEnumeration:
    def test_s3_has_six_elements(self):
        group = enumerate_group(s3_perm(GF(2)))
        assert group.order == 6

    def test_trivial_group(self):
        rep = Representation(GF(3), 2, ())
        group = enumerate_group(rep)
        assert group.order == 1
        assert group.identity() == identity_matrix(GF(3), 2)

    def test_c6_construction_order(self):
        group = enumerate_group(cyclic_module(2, 3, 1, GF(3)))
        assert group.order == 6  # r * p^k

    def test_closure_under_products(self):
        # full closure check for every enumerated pair, |G| <= 24
        for rep in (s3_perm(GF(5)), cyclic_module(2, 3, 1, GF(3)),
                    dihedral_module(3, 1, GF(3))):
            group = enumerate_group(rep)
            elems = set(group.elements)
            for a, b in itertools.product(group.elements, repeat=2):
                assert mat_mul(a, b, rep.field) in elems

    def test_identity_first_and_deterministic(self):
        rep = s3_perm(GF(2))
        g1 = enumerate_group(rep)
        g2 = enumerate_group(rep)
        assert g1.elements == g2.elements
        assert g1.identity() == identity_matrix(GF(2), 3)

    def test_cap_exceeded(self):
        with pytest.raises(GroupCapExceededError):
            enumerate_group(s3_perm(GF(2)), cap=3)

    def test_singular_generator_rejected(self):
        f2 = GF(2)
        singular = mat_from_rows([[f2.one, f2.one], [f2.one, f2.one]])
        with pytest.raises(Exception):
            Representation(f2, 2, (singular,))


class TestElementOrders:
    def test_c6_orders(self):
        group = enumerate_group(cyclic_module(2, 3, 1, GF(3)))
        orders = element_orders(group)
        assert sorted(orders) == [1, 2, 3, 3, 6, 6]
        assert max(orders) == 6

    def test_trivial(self):
        group = enumerate_group(Representation(GF(2), 1, ()))
        assert element_orders(group) == [1]

    def test_s3_max_order(self):
        group = enumerate_group(s3_perm(GF(5)))
        assert max(element_orders(group)) == 3


class TestCyclicModule:
    def test_spec_instance(self):
        f3 = GF(3)
        rep = cyclic_module(2, 3, 1, f3)
        g, h = rep.generators
        two = f3.scalar(2)
        assert g == mat_from_rows([[two if i == j else f3.zero for j in range(3)]
                                   for i in range(3)])
        assert mat_pow(h, 3, f3) == identity_matrix(f3, 3)
        assert mat_pow(g, 2, f3) == identity_matrix(f3, 3)
        assert mat_mul(g, h, f3) == mat_mul(h, g, f3)

    def test_degenerate_r_one(self):
        rep = cyclic_module(1, 2, 2, GF(2))
        group = enumerate_group(rep)
        assert group.order == 4  # the shift p-group alone

    def test_field_without_root_rejected(self):
        with pytest.raises(Exception):
            cyclic_module(4, 3, 1, GF(3))  # no 4th root of unity in F_3


class TestDihedralModule:
    def test_reflection_images(self):
        f3 = GF(3)
        rep = dihedral_module(3, 1, f3)
        rho, sigma = rep.generators
        # sigma: (a0, a1, a2) -> (-a0, -a2, -a1)
        from sepinv.linalg import mat_vec
        v = tuple(f3.scalar(c) for c in (1, 2, 0))
        assert [x.rep for x in mat_vec(sigma, v, f3)] == [2, 0, 1]

    def test_relations(self):
        f3 = GF(3)
        rep = dihedral_module(3, 1, f3)
        rho, sigma = rep.generators
        ident = identity_matrix(f3, 3)
        assert mat_mul(sigma, sigma, f3) == ident
        assert mat_pow(rho, 3, f3) == ident
        assert mat_mul(mat_mul(sigma, rho, f3), sigma, f3) == mat_inv(rho, f3)

    def test_group_order(self):
        assert enumerate_group(dihedral_module(3, 1, GF(3))).order == 6
        assert enumerate_group(dihedral_module(5, 1, GF(5))).order == 10

    def test_char_two_rejected(self):
        with pytest.raises(ConstructionError):
            dihedral_module(2, 1, GF(2))


class TestRegularRepresentation:
    def test_c2(self):
        f2 = GF(2)
        group = enumerate_group(cyclic_module(1, 2, 1, f2))
        reg = regular_representation(group)
        assert reg.dim == 2
        swap = mat_from_rows([[f2.zero, f2.one], [f2.one, f2.zero]])
        assert reg.generators == (swap,)

    def test_left_translation_table_oracle(self):
        # independently rebuild each generator's permutation from the product table
        f2 = GF(2)
        group = enumerate_group(s3_perm(f2))
        reg = regular_representation(group)
        for gen_mat, gen_idx in zip(reg.generators, group.generator_indices):
            g = group.elements[gen_idx]
            for col, h in enumerate(group.elements):
                product = mat_mul(g, h, f2)
                row = group.index(product)
                for i in range(6):
                    expected = f2.one if i == row else f2.zero
                    assert gen_mat[i][col] == expected

    def test_identity_regular_matrix(self):
        group = enumerate_group(Representation(GF(3), 1, ()))
        reg = regular_representation(group)
        assert reg.generators == (identity_matrix(GF(3), 1),)

    def test_regular_group_order_matches(self):
        group = enumerate_group(s3_perm(GF(2)))
        reg_group = enumerate_group(regular_representation(group))
        assert reg_group.order == group.order


class TestCosets:
    def test_c3_in_s3(self):
        group = enumerate_group(s3_perm(GF(2)))
        three_cycle = group.generators()[1]
        h = subgroup_closure(group, [three_cycle])
        assert len(h) == 3
        cosets = right_cosets(group, h)
        assert cosets.index == 2
        assert cosets.representatives[0] == group.identity()
        # disjoint cover
        covered = set()
        for rep in cosets.representatives:
            for hh in h:
                covered.add(mat_mul(hh, rep, group.field))
        assert covered == set(group.elements)

    def test_non_subgroup_rejected(self):
        group = enumerate_group(s3_perm(GF(2)))
        transposition = group.generators()[0]
        with pytest.raises(ConstructionError):
            right_cosets(group, [group.identity(), transposition,
                                 group.generators()[1]])

    def test_normality(self):
        group = enumerate_group(s3_perm(GF(2)))
        three_cycle = group.generators()[1]
        transposition = group.generators()[0]
        assert is_normal(group, subgroup_closure(group, [three_cycle]))
        assert not is_normal(group, subgroup_closure(group, [transposition]))


class TestInducedModules:
    def test_trivial_subgroup_of_c2_gives_regular(self):
        f2 = GF(2)
        group = enumerate_group(cyclic_module(1, 2, 1, f2))
        cosets = right_cosets(group, [group.identity()])
        sub = SubgroupAction.trivial([group.identity()], f2)
        induced = induced_module(sub, group, cosets)
        reg = regular_representation(group)
        assert induced.rep.generators == reg.generators

    def test_whole_group_gives_module_back(self):
        f2 = GF(2)
        group = enumerate_group(cyclic_module(1, 2, 1, f2))
        cosets = right_cosets(group, group.elements)
        sub = SubgroupAction.restriction(group.elements, f2)
        induced = induced_module(sub, group, cosets)
        assert induced.rep.dim == 2
        assert induced.rep.generators == (group.generators()[0],)

    def test_c3_in_s3_trivial_block(self):
        f2 = GF(2)
        group = enumerate_group(s3_perm(f2))
        h = subgroup_closure(group, [group.generators()[1]])
        cosets = right_cosets(group, h)
        sub = SubgroupAction.trivial(h, f2)
        induced = induced_module(sub, group, cosets)
        assert induced.rep.dim == 2
        # the transposition swaps the two blocks; the 3-cycle fixes them
        transposition_image = induced.rep.generators[0]
        swap = mat_from_rows([[f2.zero, f2.one], [f2.one, f2.zero]])
        assert transposition_image == swap
        assert induced.rep.generators[1] == identity_matrix(f2, 2)

    def test_induced_is_a_group_action(self):
        f2 = GF(2)
        group = enumerate_group(s3_perm(f2))
        h = subgroup_closure(group, [group.generators()[1]])
        cosets = right_cosets(group, h)
        induced = induced_module(SubgroupAction.trivial(h, f2), group, cosets)
        assert enumerate_group(induced.rep).order in (1, 2)  # quotient-like image


class TestParametricActions:
    def test_twist_pair_spec_action(self):
        f2 = GF(2)
        act = twist_pair_module(f2, 1)
        assert act.dim == 4
        s = f2.one
        mat = act.specialize(s)
        from sepinv.linalg import mat_vec
        point = tuple(f2.scalar(c) for c in (0, 1, 0, 1))
        image = mat_vec(mat, point, f2)
        # (a0 + s a1, a1, b0 + s^2 b1, b1)
        assert [x.rep for x in image] == [1, 1, 1, 1]

    def test_specialize_at_zero_is_identity(self):
        for act in (twist_pair_module(GF(2), 1), twist_pair_module(GF(3), 2),
                    dual_sym_module(QQ, 2), dual_sym_module(QQ, 3)):
            ident = identity_matrix(act.field, act.dim)
            assert act.specialize(act.field.zero) == ident

    def test_additive_composition_over_f4(self):
        f4 = GF(2, 2)
        act = twist_pair_module(f4, 1)
        for a in f4.elements():
            for b in f4.elements():
                lhs = mat_mul(act.specialize(a), act.specialize(b), f4)
                assert lhs == act.specialize(a + b)

    def test_sym_block_requires_char_zero(self):
        with pytest.raises(ConstructionError):
            dual_sym_module(GF(3), 2)

    def test_twist_requires_positive_char(self):
        with pytest.raises(ConstructionError):
            twist_pair_module(QQ, 1)

    def test_dual_sym_dimension(self):
        assert dual_sym_module(QQ, 2).dim == 5
        assert dual_sym_module(QQ, 3).dim == 6

    def test_torus_specialization(self):
        act = torus_module([-1, 2])
        two = QQ.scalar(2)
        mat = act.specialize(two)
        assert mat[0][0].rep == QQ.scalar(1).rep / 2
        assert mat[1][1].rep == 4
        with pytest.raises(ZeroDivisionError):
            act.specialize(QQ.zero)

    def test_torus_composition_multiplicative(self):
        act = torus_module([1, -1, 3])
        for a in (2, 3, 5):
            for b in (2, 7):
                lhs = mat_mul(act.specialize(QQ.scalar(a)), act.specialize(QQ.scalar(b)), QQ)
                assert lhs == act.specialize(QQ.scalar(a * b))

    def test_empty_weights_rejected(self):
        with pytest.raises(ConstructionError):
            torus_module([])
