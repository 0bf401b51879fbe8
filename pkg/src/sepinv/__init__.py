"""sepinv: separating invariants of finite matrix groups, witness certificates
for minimal separating degrees, separating-morphism constructions, and the
relative degree-bound calculus."""

from .fields import (FieldSpec, FieldMismatchError, FieldConstructionError, GF,
                     QQ, Scalar, embed, enumerate_elements, frobenius,
                     is_prime, root_of_unity)
from .polys import (Monomial, Polynomial, elementary_symmetric, monomial_basis,
                    monomials_of_degree, polarize)
from .reps import (CosetDecomposition, GroupCapExceededError, ConstructionError,
                   GroupElements, InducedModule, ParametricAction,
                   Representation, SubgroupAction, additive_module,
                   cyclic_module, dihedral_module, dual_sym_module,
                   element_orders, enumerate_group, induced_module, is_normal,
                   permutation_matrix, permutation_module,
                   regular_representation, right_cosets, subgroup_closure,
                   torus_module, twist_pair_module)
from .invariants import (HilbertIdealReport, InvariantSlice, ModularityError,
                         NonMonomialActionError, NotInvariantError, OrbitSum,
                         cumulative_invariant_basis, cumulative_parametric_basis,
                         hilbert_ideal_slice_test, invariant_slice,
                         invariant_slice_for_matrices, invariant_slice_parametric,
                         orbit_sum, reynolds_operator, transfer_to_induced)
from .separation import (DegreeSearchReport, EvidenceReport, InternalCheckError,
                         MorphismPipeline, PointCapExceededError,
                         SeparatingSet, SeparationReport, Witness,
                         WitnessConstructionError, check_map_separates,
                         check_separating_on_points, coset_polarization_morphism,
                         enumerate_points, escalation_fields,
                         minimal_parametric_invariant_degree, normal_composition,
                         orbit_representatives, parametric_pair_witness,
                         polarized_elementary_symmetric, quotient_action,
                         same_orbit, separating_degree_evidence,
                         separating_degree_search, slot_permutation_matrices,
                         subgroup_invariant_map, verify_witness,
                         witness_against_zero)

__version__ = "0.1.0"
