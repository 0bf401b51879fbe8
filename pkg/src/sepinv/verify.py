"""Named verification cases for the toolkit's headline claims.

Each case builds its module(s) from scratch, runs the relevant engine, and
checks the expected certified values exactly.  The catalog is stable; case
reports are deterministic apart from the timing field.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional

from .bounds import (GroupDescriptor, SubgroupFact, SubquotientFact,
                     apply_rules, exact_value_lookup, replay_chain)
from .fields import GF, QQ, FieldSpec
from .invariants import invariant_slice, invariant_slice_parametric
from .polys import Polynomial
from .reps import (Representation, cyclic_module, dihedral_module,
                   dual_sym_module, enumerate_group, permutation_module,
                   regular_representation, right_cosets, subgroup_closure,
                   torus_module, twist_pair_module)
from .separation import (check_map_separates, coset_polarization_morphism,
                         minimal_parametric_invariant_degree,
                         normal_composition, parametric_pair_witness,
                         polarized_elementary_symmetric, quotient_action,
                         separating_degree_search, slot_permutation_matrices,
                         subgroup_invariant_map, witness_against_zero)
from .invariants import hilbert_ideal_slice_test


@dataclass
class CaseReport:
    name: str
    passed: bool
    details: dict
    elapsed: float
    error: str = ""

    def to_json(self) -> dict:
        out = {"case": self.name, "passed": self.passed,
               "details": self.details, "timing": self.elapsed}
        if self.error:
            out["error"] = self.error
        return out


class CheckFailure(AssertionError):
    pass


def _expect(cond: bool, message: str):
    if not cond:
        raise CheckFailure(message)


# ---------------------------------------------------------------------------
# Shared module builders
# ---------------------------------------------------------------------------

def s3_regular_over_f2():
    """The 6-dimensional regular representation of the order-6 symmetric
    group, with matrices over F_2."""
    f2 = GF(2)
    perm = permutation_module(f2, 3, [[1, 0, 2], [1, 2, 0]], label="S3")
    small = enumerate_group(perm)
    rep = regular_representation(small, label="S3-regular")
    return rep, enumerate_group(rep)


def c2_regular():
    rep = cyclic_module(1, 2, 1, GF(2))
    return rep, enumerate_group(rep)


def c3_regular():
    rep = cyclic_module(1, 3, 1, GF(3))
    return rep, enumerate_group(rep)


def c4_regular():
    rep = cyclic_module(1, 2, 2, GF(2))
    return rep, enumerate_group(rep)


def c6_shift_scale():
    rep = cyclic_module(2, 3, 1, GF(3))
    return rep, enumerate_group(rep)


def d6_module():
    rep = dihedral_module(3, 1, GF(3))
    return rep, enumerate_group(rep)


def a4_descriptor():
    return GroupDescriptor(order=12, char=3, name="A4", max_element_order=3,
                           subquotients=(SubquotientFact(s=4),))


# ---------------------------------------------------------------------------
# Cases
# ---------------------------------------------------------------------------

def _case_s3_char2() -> dict:
    rep, group = s3_regular_over_f2()
    f2, f4 = GF(2), GF(2, 2)
    r2 = separating_degree_search(rep, group, f2, d_max=4)
    r4 = separating_degree_search(rep, group, f4, d_max=4)
    _expect(r4.witness is not None and r4.witness.degree == 3,
            "expected a degree-3 witness over the 4-element field")
    _expect(r4.certified_lower == 4, "certified lower bound must be 4")
    _expect(r2.first_pass_degree is not None and r2.first_pass_degree <= 4,
            "degree <= 4 slices must separate over F_2")
    _expect(r4.first_pass_degree == 4, "degree 4 must be the first pass over F_4")
    return {"certified_lower": 4, "evidence_upper": 4, "theorem_upper": group.order,
            "witness": r4.witness.to_json(), "f2": r2.to_json(), "f4": r4.to_json()}


def _case_p_group() -> dict:
    out = {}
    for label, (rep, group) in (("C2", c2_regular()), ("C3", c3_regular())):
        witness = witness_against_zero(rep, group, [rep.field.one] * rep.dim, group.order)
        _expect(witness.degree == group.order - 1,
                f"{label}: all slices below |G| must vanish at the all-ones point")
        out[label] = {"certified_lower": group.order, "theorem_upper": group.order,
                      "exact": True, "witness": witness.to_json()}
    return out


def _case_cyclic() -> dict:
    rep, group = c6_shift_scale()
    f3 = rep.field
    witness = witness_against_zero(rep, group, [f3.one] * 3, 6)
    _expect(witness.degree == 5, "slices of degree 1..5 must vanish at the witness point")
    # the distinguished degree-6 invariant: the squared product of all variables
    m = Polynomial.from_monomial(f3, 3, (2, 2, 2))
    for g in rep.generators:
        _expect(m.substitute_linear(g) == m, "squared variable product must be invariant")
    _expect(m.evaluate(witness.v).rep == 1, "squared variable product must be 1 at all-ones")
    return {"certified_lower": 6, "theorem_upper": group.order, "exact": True,
            "top_invariant": m.to_text(), "witness": witness.to_json()}


def _case_dihedral() -> dict:
    rep, group = d6_module()
    f3 = rep.field
    witness = witness_against_zero(rep, group, [f3.one] * 3, 6)
    _expect(witness.degree == 5, "slices of degree 1..5 must vanish at the witness point")
    # 2 * (x1 x2 x3)^2: twice the rotation-orbit sum of the squared product
    two_m = Polynomial.from_monomial(f3, 3, (2, 2, 2), coeff=2)
    for g in rep.generators:
        _expect(two_m.substitute_linear(g) == two_m, "2m must be invariant")
    _expect(two_m.evaluate(witness.v).rep == 2, "2m must evaluate to 2 at all-ones")
    return {"certified_lower": 6, "theorem_upper": group.order, "exact": True,
            "top_invariant": two_m.to_text(), "witness": witness.to_json()}


def _case_additive_char_p() -> dict:
    out = {}
    for p, expected_dims in ((2, [2, 3, 5, 7]), (3, [2, 3, 4, 6])):
        field = GF(p)
        act = twist_pair_module(field, 1)
        dims = [invariant_slice_parametric(act, d).dimension for d in range(1, 5)]
        _expect(dims == expected_dims,
                f"p={p}: slice dimensions {dims} differ from the closed form {expected_dims}")
        bound = p + 1
        witness = parametric_pair_witness(act, [0, 1, 0, 0], [0, 1, 1, 0], bound)
        _expect(witness.degree == bound - 1, f"p={p}: witness must agree through degree {bound - 1}")
        out[f"p={p}"] = {"slice_dims": dims, "separating_degree": bound,
                         "witness": witness.to_json()}
    return out


def _case_additive_char_0() -> dict:
    act = dual_sym_module(QQ, 2)
    witness = parametric_pair_witness(act, [1, 0, 1, 0, 0], [1, 0, 0, 0, 0], 3)
    _expect(witness.degree == 2, "all invariants of degree <= 2 must agree on the pair")
    return {"separating_degree": 3, "witness": witness.to_json()}


def _case_torus() -> dict:
    out = {}
    for n in (2, 3, 4):
        act = torus_module([-1, n])
        first = minimal_parametric_invariant_degree(act, n + 3)
        _expect(first == n + 1,
                f"weights (-1,{n}): first nonzero slice at degree {first}, expected {n + 1}")
        out[f"weights(-1,{n})"] = {"minimal_invariant_degree": first}
    return out


def _case_polarization() -> dict:
    out = {}
    for q, w, d in ((3, 2, 2), (2, 2, 3), (5, 1, 3)):
        field = GF(q)
        sep_set = polarized_elementary_symmetric(w, d, field)
        perms = []
        swap = list(range(d))
        swap[0], swap[1] = swap[1], swap[0]
        perms.append(swap)
        perms.append([(i + 1) % d for i in range(d)])
        mats = slot_permutation_matrices(field, d, w, perms)
        sym = enumerate_group(Representation(field, d * w, tuple(mats)))
        for f in sep_set.members:
            for g in sym.generators():
                _expect(f.substitute_linear(g) == f, "polarized component must be invariant")
        bad = check_map_separates(sep_set.members, sym.elements, field, d * w)
        _expect(bad is None, f"(q,w,d)=({q},{w},{d}): unseparated orbit pair {bad}")
        out[f"q={q},w={w},d={d}"] = {"members": len(sep_set.members),
                                     "max_degree": sep_set.max_degree, "separated": True}
    return out


def _case_theoremB() -> dict:
    # index construction: order-6 symmetric group over its order-3 subgroup
    rep, group = s3_regular_over_f2()
    f2 = rep.field
    three_cycle_image = group.generators()[1]
    subgroup = subgroup_closure(group, [three_cycle_image])
    _expect(len(subgroup) == 3, "subgroup must have order 3")
    cosets = right_cosets(group, subgroup)
    phi = subgroup_invariant_map(rep, subgroup, 3)
    pipeline = coset_polarization_morphism(phi, cosets)
    comps = pipeline.components()
    _expect(pipeline.degree_bound() == 6, "stage degree bound must be [G:H]*3 = 6")
    _expect(max(f.degree() for f in comps) <= 6, "composite degree must stay <= 6")
    for f in comps:
        for g in group.generators():
            _expect(f.substitute_linear(g) == f, "composite component must be group-invariant")
    bad = check_map_separates(comps, group.elements, f2, rep.dim)
    _expect(bad is None, f"index pipeline left an unseparated pair {bad}")

    # normal-subgroup composition: order-4 cyclic group over its order-2 subgroup
    rep4, group4 = c4_regular()
    gen = group4.generators()[0]
    h = group4.multiply(gen, gen)
    subgroup4 = subgroup_closure(group4, [h])
    phi4 = subgroup_invariant_map(rep4, subgroup4, 2)
    d_mats = quotient_action(phi4, group4.generators(), rep4.field)
    quotient = enumerate_group(Representation(rep4.field, len(phi4), tuple(d_mats)))
    psi4 = subgroup_invariant_map(
        Representation(rep4.field, len(phi4), tuple(d_mats)), quotient.elements, 2)
    pipeline4 = normal_composition(phi4, psi4, group4, subgroup4)
    comps4 = pipeline4.components()
    _expect(pipeline4.degree_bound() <= 4, "normal composition degree bound must be <= 4")
    _expect(max(f.degree() for f in comps4) <= 4, "normal composite degree must stay <= 4")
    bad4 = check_map_separates(comps4, group4.elements, rep4.field, rep4.dim)
    _expect(bad4 is None, f"normal composition left an unseparated pair {bad4}")
    return {"index_pipeline": {"components": len(comps), "degree_bound": 6, "separated": True},
            "normal_pipeline": {"components": len(comps4), "degree_bound": pipeline4.degree_bound(),
                                "separated": True}}


def _case_hilbert_ideal() -> dict:
    out = {}
    for label, (rep, group), d in (("C2", c2_regular(), 2),
                                   ("C3", c3_regular(), 3),
                                   ("C6", c6_shift_scale(), 6)):
        report = hilbert_ideal_slice_test(rep, group, d)
        _expect(bool(report.missed),
                f"{label}: some degree-{d} invariant must escape the lower-degree ideal slice")
        out[label] = {"degree": d, "ideal_slice_rank": report.ideal_slice_rank,
                      "invariant_dimension": report.invariant_dimension,
                      "missed": [f.to_text() for f in report.missed]}
    return out


def _case_bounds_a4() -> dict:
    a4 = a4_descriptor()
    upper, lower = apply_rules(a4)
    _expect(upper.value == 9, f"A4 upper bound {upper.value}, expected 9")
    _expect(replay_chain(upper.chain) == 9, "A4 certificate failed to replay")
    a4xa4 = GroupDescriptor(
        order=144, char=3, name="A4xA4", max_element_order=3,
        subgroups=(SubgroupFact(order=12, index=12, normal=True,
                                descriptor=a4, quotient=a4),))
    upper2, _ = apply_rules(a4xa4)
    _expect(upper2.value == 81, f"A4xA4 upper bound {upper2.value}, expected 81")
    _expect(replay_chain(upper2.chain) == 81, "A4xA4 certificate failed to replay")
    lookups = {
        "symmetric3_char2": exact_value_lookup(GroupDescriptor(order=6, char=2, symmetric=3)),
        "p_group8_char2": exact_value_lookup(GroupDescriptor(order=8, char=2, p_group=True)),
        "cyclic6": exact_value_lookup(GroupDescriptor(order=6, char=3, cyclic=True)),
        "dihedral18_char3": exact_value_lookup(GroupDescriptor(order=18, char=3, dihedral_n=9)),
    }
    _expect(lookups["symmetric3_char2"].value == 4, "exact lookup for the order-6 symmetric group")
    _expect(lookups["p_group8_char2"].value == 8, "exact lookup for the order-8 2-group")
    _expect(lookups["cyclic6"].value == 6, "exact lookup for the order-6 cyclic group")
    _expect(lookups["dihedral18_char3"].value == 18, "exact lookup for the order-18 dihedral group")
    return {"A4_upper": upper.to_json(), "A4xA4_upper": upper2.to_json(),
            "exact_lookups": {k: v.value for k, v in lookups.items()}}


def _case_bounds_dihedral() -> dict:
    # D_{2n} with n = p^r * m, p = 3, r = 1, m = 2: order 12, char 3
    n = 6
    desc = GroupDescriptor(
        order=2 * n, char=3, name="D12", dihedral_n=None, max_element_order=n,
        subgroups=(SubgroupFact(order=4, index=3, name="D4"),),
        subquotients=(SubquotientFact(s=4),))
    upper, lower = apply_rules(desc)
    _expect(upper.value == (3 * n) // 2, f"upper bound {upper.value}, expected {(3 * n) // 2}")
    _expect(lower.value == n, f"lower bound {lower.value}, expected {n}")
    _expect(replay_chain(upper.chain) == upper.value, "upper certificate failed to replay")
    _expect(replay_chain(lower.chain) == lower.value, "lower certificate failed to replay")
    return {"n": n, "upper": upper.to_json(), "lower": lower.to_json()}


CASES: Dict[str, Callable[[], dict]] = {
    "s3-char2": _case_s3_char2,
    "p-group": _case_p_group,
    "cyclic": _case_cyclic,
    "dihedral": _case_dihedral,
    "additive-char-p": _case_additive_char_p,
    "additive-char-0": _case_additive_char_0,
    "torus": _case_torus,
    "polarization": _case_polarization,
    "theoremB": _case_theoremB,
    "hilbert-ideal": _case_hilbert_ideal,
    "bounds-a4": _case_bounds_a4,
    "bounds-dihedral": _case_bounds_dihedral,
}

CASE_DESCRIPTIONS: Dict[str, str] = {
    "s3-char2": "order-6 symmetric group, char 2: witness at degree 3, degree-4 slices separate",
    "p-group": "p-groups attain their order: all-ones witness for C2/F2 and C3/F3",
    "cyclic": "cyclic groups attain their order: C6 over F_3 with the squared variable product",
    "dihedral": "dihedral groups of order 2p^r attain 2p^r: D6 over F_3",
    "additive-char-p": "additive group, char p: twisted-pair slice dimensions and degree p^n+1 witness",
    "additive-char-0": "additive group, char 0: dual-plus-symmetric-power witness of degree n+1",
    "torus": "one-dimensional torus with weights (-1, n): first invariant at degree n+1",
    "polarization": "polarized elementary symmetric functions separate slot-permutation orbits",
    "theoremB": "subgroup-index and normal-quotient separating-morphism constructions",
    "hilbert-ideal": "degree-|G| invariants escaping the ideal generated below |G|",
    "bounds-a4": "bound calculus: A4 -> 9, A4xA4 -> 81, exact family lookups",
    "bounds-dihedral": "bound calculus: D_{2n}, n = p^r m -> upper 3n/2, lower n",
}


def list_cases() -> List[dict]:
    """Stable catalog of verification cases."""
    return [{"name": name, "description": CASE_DESCRIPTIONS[name]} for name in CASES]


def run_case(name: str) -> CaseReport:
    if name not in CASES:
        raise KeyError(f"unknown verification case {name!r}")
    start = time.perf_counter()
    try:
        details = CASES[name]()
        return CaseReport(name, True, details, time.perf_counter() - start)
    except CheckFailure as exc:
        return CaseReport(name, False, {}, time.perf_counter() - start, error=str(exc))


def run_all(jobs: int = 1) -> List[CaseReport]:
    names = list(CASES)
    if jobs <= 1:
        return [run_case(name) for name in names]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        reports = list(pool.map(run_case, names))
    return reports
