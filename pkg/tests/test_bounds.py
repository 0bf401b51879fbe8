"""Degree-bound calculus: the worked bound derivations, certificate replay
soundness, monotonicity under added facts, and consistency with the exact
family values."""

import pytest

from sepinv.bounds import (BoundCertificate, DescriptorError, GroupDescriptor,
                           SubgroupFact, SubquotientFact, apply_rules,
                           descriptor_from_group, exact_value_lookup,
                           replay_chain)
from sepinv.fields import GF
from sepinv.reps import cyclic_module, enumerate_group, permutation_module


def a4_descriptor(char=3):
    return GroupDescriptor(order=12, char=char, name="A4", max_element_order=3,
                           subquotients=(SubquotientFact(s=4),))


class TestWorkedDerivations:
    def test_a4_upper_nine(self):
        upper, lower = apply_rules(a4_descriptor())
        assert upper.value == 9
        assert upper.chain[-1].rule == "coprime-subquotient-even"
        assert lower.value == 3

    def test_a4_squared_upper_81(self):
        a4 = a4_descriptor()
        desc = GroupDescriptor(
            order=144, char=3, name="A4xA4", max_element_order=3,
            subgroups=(SubgroupFact(order=12, index=12, normal=True,
                                    descriptor=a4, quotient=a4),))
        upper, _ = apply_rules(desc)
        assert upper.value == 81
        assert upper.chain[-1].rule == "quotient-multiplicativity"

    def test_dihedral_with_coprime_part(self):
        # D_{2n}, n = p^r m with m > 1: upper 3n/2, lower n (n = 6, char 3)
        n = 6
        desc = GroupDescriptor(order=2 * n, char=3, max_element_order=n,
                               subgroups=(SubgroupFact(order=4, index=3),),
                               subquotients=(SubquotientFact(s=4),))
        upper, lower = apply_rules(desc)
        assert upper.value == 9 == (3 * n) // 2
        assert lower.value == n
        assert lower.chain[-1].rule == "max-element-order"

    def test_odd_subquotient_five_eighths(self):
        # |G| = 56 = 8 * 7 in char 2 with a non-cyclic order-21 subquotient
        desc = GroupDescriptor(order=56, char=2, max_element_order=8,
                               subquotients=(SubquotientFact(s=21),))
        upper, _ = apply_rules(desc)
        assert upper.value == (5 * 56) // 8 == 35

    def test_index_rule_via_cyclic_subgroup(self):
        # cyclic subgroup of order 5 and index 2: upper 2 * 5 = 10
        desc = GroupDescriptor(order=10, char=5, max_element_order=5,
                               subgroups=(SubgroupFact(order=5, index=2, cyclic=True),))
        upper, lower = apply_rules(desc)
        assert upper.value == 10
        assert lower.value == 5

    def test_char_part_lower(self):
        desc = GroupDescriptor(order=12, char=2)
        _, lower = apply_rules(desc)
        assert lower.value == 4
        assert lower.chain[-1].rule == "char-part"


class TestExactLookup:
    def test_thmC_families(self):
        assert exact_value_lookup(GroupDescriptor(order=6, char=2, symmetric=3)).value == 4
        assert exact_value_lookup(GroupDescriptor(order=8, char=2, p_group=True)).value == 8
        assert exact_value_lookup(GroupDescriptor(order=6, char=3, cyclic=True)).value == 6
        assert exact_value_lookup(GroupDescriptor(order=18, char=3, dihedral_n=9)).value == 18

    def test_dihedral_two_group_in_char_two(self):
        # D_{2*4} is a 2-group, so characteristic 2 gives the order
        got = exact_value_lookup(GroupDescriptor(order=8, char=2, dihedral_n=4))
        assert got.value == 8

    def test_uncovered_families_return_none(self):
        assert exact_value_lookup(GroupDescriptor(order=12, char=3)) is None
        assert exact_value_lookup(GroupDescriptor(order=6, char=5, symmetric=3)) is None
        # D_{2n} with n not a power of the characteristic
        assert exact_value_lookup(GroupDescriptor(order=12, char=3, dihedral_n=6)) is None
        # p-group in the wrong characteristic
        assert exact_value_lookup(GroupDescriptor(order=8, char=3, p_group=True)) is None

    def test_cyclic_any_characteristic(self):
        assert exact_value_lookup(GroupDescriptor(order=7, char=0, cyclic=True)).value == 7


class TestCertificates:
    def test_replay_soundness(self):
        for desc in (a4_descriptor(),
                     GroupDescriptor(order=10, char=5, max_element_order=5,
                                     subgroups=(SubgroupFact(order=5, index=2, cyclic=True),)),
                     GroupDescriptor(order=6, char=3, cyclic=True, max_element_order=6)):
            upper, lower = apply_rules(desc)
            assert replay_chain(upper.chain) == upper.value
            assert replay_chain(lower.chain) == lower.value

    def test_tampered_chain_rejected(self):
        upper, _ = apply_rules(a4_descriptor())
        from sepinv.bounds import ChainStep
        bad = upper.chain[:-1] + (ChainStep(upper.chain[-1].rule,
                                            upper.chain[-1].inputs, 7),)
        with pytest.raises(ValueError):
            replay_chain(bad)

    def test_json_shape(self):
        upper, _ = apply_rules(a4_descriptor())
        payload = upper.to_json()
        assert payload["direction"] == "upper"
        assert all({"rule", "ref", "inputs", "output"} <= set(step)
                   for step in payload["chain"])


class TestMonotonicityAndConsistency:
    def test_adding_facts_never_worsens(self):
        base = GroupDescriptor(order=12, char=3)
        richer = GroupDescriptor(order=12, char=3, max_element_order=3,
                                 subquotients=(SubquotientFact(s=4),))
        up0, lo0 = apply_rules(base)
        up1, lo1 = apply_rules(richer)
        assert up1.value <= up0.value
        assert lo1.value >= lo0.value

    def test_exact_between_derived_bounds(self):
        for desc in (GroupDescriptor(order=6, char=3, cyclic=True, max_element_order=6),
                     GroupDescriptor(order=8, char=2, p_group=True, max_element_order=4),
                     GroupDescriptor(order=6, char=2, symmetric=3, max_element_order=3),
                     GroupDescriptor(order=18, char=3, dihedral_n=9, max_element_order=9)):
            upper, lower = apply_rules(desc)
            exact = exact_value_lookup(desc)
            assert lower.value <= exact.value <= upper.value

    def test_s3_char2_exact_beats_subquotient(self):
        desc = GroupDescriptor(order=6, char=2, symmetric=3, max_element_order=3)
        upper, lower = apply_rules(desc)
        assert upper.value == 4
        assert lower.value == 4


class TestValidation:
    def test_bad_index_product(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(order=12, char=3,
                            subgroups=(SubgroupFact(order=5, index=2),))

    def test_quotient_without_normal(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(order=12, char=3,
                            subgroups=(SubgroupFact(order=4, index=3,
                                                    quotient=GroupDescriptor(order=3, char=3)),))

    def test_p_group_needs_prime_power_order(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(order=12, char=2, p_group=True)

    def test_subquotient_coprimality(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(order=12, char=2, subquotients=(SubquotientFact(s=4),))

    def test_non_prime_characteristic(self):
        with pytest.raises(DescriptorError):
            GroupDescriptor(order=4, char=6)


class TestAutoExtraction:
    def test_c6_matrix_group(self):
        group = enumerate_group(cyclic_module(2, 3, 1, GF(3)))
        desc = descriptor_from_group(group, char=3, name="C6")
        assert desc.order == 6
        assert desc.cyclic
        assert desc.max_element_order == 6
        assert exact_value_lookup(desc).value == 6

    def test_s3_with_subgroup_facts(self):
        group = enumerate_group(permutation_module(GF(2), 3, [[1, 0, 2], [1, 2, 0]]))
        desc = descriptor_from_group(group, char=2, name="S3",
                                     subgroup_generator_sets=[[group.generators()[1]],
                                                              [group.generators()[0]]])
        assert desc.order == 6
        assert not desc.cyclic
        assert desc.max_element_order == 3
        c3, c2 = desc.subgroups
        assert (c3.order, c3.index, c3.normal, c3.cyclic) == (3, 2, True, True)
        assert (c2.order, c2.index, c2.normal, c2.cyclic) == (2, 3, False, True)
        upper, lower = apply_rules(desc)
        assert upper.value <= 6
        assert lower.value == 3

    def test_large_group_rejected(self):
        group = enumerate_group(permutation_module(
            GF(2), 5, [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]))
        with pytest.raises(DescriptorError):
            descriptor_from_group(group, char=2)
