"""The separation engine.

Orbit comparison over finite fields, witness certificates for lower bounds on
the minimal separating degree, the ascending-degree search, the
coset/polarization construction of separating morphisms, and the normal-
subgroup composition.

A witness pair (two points in distinct orbits on which every invariant of
degree <= d agrees) is a rigorous lower-bound certificate valid over the
algebraic closure: slice bases stay bases under field extension.  A pass over
a finite field is evidence only, and is flagged as such in every report.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fields import FieldSpec, Scalar, embed
from .invariants import (InvariantSlice, NotInvariantError,
                         cumulative_invariant_basis, invariant_slice,
                         invariant_slice_for_matrices,
                         invariant_slice_parametric)
from .linalg import Matrix, mat_from_rows, mat_vec, solve
from .polys import Polynomial, monomial_basis, polarize, elementary_symmetric
from .reps import (GroupElements, ParametricAction, Representation,
                   CosetDecomposition, enumerate_group, is_normal,
                   permutation_matrix)

Point = Tuple[Scalar, ...]

DEFAULT_POINT_CAP = 10 ** 6


class PointCapExceededError(RuntimeError):
    """The requested finite point enumeration exceeds the configured cap."""


class WitnessConstructionError(ValueError):
    """A claimed witness failed its defining checks (construction misuse)."""


class InternalCheckError(RuntimeError):
    """Two distinct orbits of a finite group agreed on all invariants up to
    the group-order ceiling; impossible, so the engine is broken."""


# ---------------------------------------------------------------------------
# Points and orbits
# ---------------------------------------------------------------------------

def point_count(field: FieldSpec, dim: int) -> int:
    return field.q ** dim


def enumerate_points(field: FieldSpec, dim: int,
                     cap: int = DEFAULT_POINT_CAP) -> List[Point]:
    """All q^dim points in deterministic order (last coordinate fastest)."""
    total = point_count(field, dim)
    if total > cap:
        raise PointCapExceededError(
            f"{total} points over {field!r}^{dim} exceed the cap {cap}")
    elems = field.elements()
    return [tuple(pt) for pt in itertools.product(elems, repeat=dim)]


def orbit_of(matrices: Sequence[Matrix], v: Point, field: FieldSpec) -> List[Point]:
    """The orbit list of v in enumeration order of the group elements."""
    seen = []
    seen_set = set()
    for g in matrices:
        w = mat_vec(g, v, field)
        if w not in seen_set:
            seen_set.add(w)
            seen.append(w)
    return seen


def same_orbit(group: GroupElements, v: Point, w: Point) -> Tuple[bool, List[Point]]:
    """Whether w lies in the orbit of v, plus the full orbit listing.

    Points may live in an extension of the group's matrix field; the matrices
    are embedded accordingly."""
    if len(v) != group.dim or len(w) != group.dim:
        raise ValueError("point dimension does not match the module")
    pt_field = v[0].field if v else group.field
    if pt_field == group.field:
        mats = group.elements
    else:
        mats = _embedded_matrices(group.elements, group.field, pt_field)
    orbit = orbit_of(mats, tuple(v), pt_field)
    return tuple(w) in set(orbit), orbit


def orbit_representatives(matrices: Sequence[Matrix], field: FieldSpec, dim: int,
                          cap: int = DEFAULT_POINT_CAP) -> List[Point]:
    """One canonical representative per orbit: the first orbit point in
    point-enumeration order."""
    reps: List[Point] = []
    seen = set()
    for pt in enumerate_points(field, dim, cap):
        if pt in seen:
            continue
        reps.append(pt)
        for g in matrices:
            seen.add(mat_vec(g, pt, field))
    return reps


# ---------------------------------------------------------------------------
# Separating sets and witnesses
# ---------------------------------------------------------------------------

@dataclass
class SeparatingSet:
    """A set of invariants offered as separating, with provenance."""

    members: Tuple[Polynomial, ...]
    max_degree: int
    provenance: str = ""

    @staticmethod
    def build(members: Sequence[Polynomial], generators: Sequence[Matrix],
              provenance: str = "") -> "SeparatingSet":
        """Construct after verifying exact invariance of every member."""
        for f in members:
            for g in generators:
                if f.substitute_linear(g) != f:
                    raise NotInvariantError(
                        f"member {f} is not invariant under a generator")
        max_deg = max((f.degree() for f in members), default=0)
        return SeparatingSet(tuple(members), max_deg, provenance)


@dataclass
class Witness:
    """Two points in distinct orbits agreeing on all invariants of degree <= degree.

    `orbit_of_v` is the full finite orbit when the group is finite (the
    distinctness proof); parametric families record their argument in `note`.
    `separating_invariant`, when present, is an invariant of degree
    `degree + 1` taking different values on the pair.
    """

    v: Point
    w: Point
    degree: int
    values: Tuple[Scalar, ...]
    orbit_of_v: Optional[Tuple[Point, ...]] = None
    separating_invariant: Optional[Polynomial] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "v": [_scalar_json(x) for x in self.v],
            "w": [_scalar_json(x) for x in self.w],
            "degree": self.degree,
            "agreeing_values": [_scalar_json(x) for x in self.values],
        }
        if self.orbit_of_v is not None:
            out["orbit_of_v"] = [[_scalar_json(x) for x in pt] for pt in self.orbit_of_v]
        if self.separating_invariant is not None:
            out["separating_invariant"] = self.separating_invariant.to_text()
        if self.note:
            out["note"] = self.note
        return out


def _scalar_json(x: Scalar):
    f = x.field
    if f.p == 0:
        frac: Fraction = x.rep
        return int(frac) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    if f.k == 1:
        return x.rep
    return list(f.coeffs(x))


def verify_witness(witness: Witness, group: GroupElements,
                   invariants: Sequence[Polynomial]) -> bool:
    """Re-verify a finite-group witness: distinct orbits by full enumeration,
    exact agreement of every listed invariant up to the witness degree."""
    in_same, _ = same_orbit(group, witness.v, witness.w)
    if in_same:
        return False
    for f in invariants:
        if f.degree() > witness.degree:
            continue
        if f.evaluate(witness.v) != f.evaluate(witness.w):
            return False
    return True


# ---------------------------------------------------------------------------
# Pointwise separation checks
# ---------------------------------------------------------------------------

@dataclass
class SeparationReport:
    """Outcome of one check over one finite field.

    outcome is "separated" (all distinct orbit pairs told apart - evidence
    only, the points live in the algebraic closure) or "witness" (a rigorous
    lower-bound certificate)."""

    field: FieldSpec
    degree: int
    outcome: str
    orbit_count: int
    pair_count: int
    witness: Optional[Witness]
    elapsed: float
    evidence_only: bool = True

    def to_json(self) -> dict:
        out = {
            "field": {"p": self.field.p, "k": self.field.k},
            "degree": self.degree,
            "outcome": self.outcome,
            "orbit_count": self.orbit_count,
            "pair_count": self.pair_count,
            "pass_is_evidence_only": self.evidence_only,
            "timing": self.elapsed,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _embedded_invariants(invariants: Sequence[Polynomial],
                         field: FieldSpec) -> List[Polynomial]:
    out = []
    for f in invariants:
        if f.field == field:
            out.append(f)
        else:
            out.append(f.map_coefficients(lambda c: embed(c, field), field))
    return out


def _embedded_matrices(matrices: Sequence[Matrix], src: FieldSpec,
                       dst: FieldSpec) -> List[Matrix]:
    if src == dst:
        return list(matrices)
    return [tuple(tuple(embed(x, dst) for x in row) for row in g) for g in matrices]


def _fingerprint(invariants: Sequence[Polynomial], pt: Point) -> Tuple[Scalar, ...]:
    return tuple(f.evaluate(pt) for f in invariants)


def check_separating_on_points(sep_set: SeparatingSet, rep: Representation,
                               group: GroupElements, field: Optional[FieldSpec] = None,
                               cap: int = DEFAULT_POINT_CAP) -> SeparationReport:
    """Partition all field points into orbits and compare invariant values on
    canonical representatives.  Returns the first witness in canonical orbit
    order, or a separated-all-pairs report."""
    start = time.perf_counter()
    test_field = field if field is not None else rep.field
    if test_field.p == 0:
        raise ValueError("pointwise checks require a finite field")
    mats = _embedded_matrices(group.elements, rep.field, test_field)
    invs = _embedded_invariants(sep_set.members, test_field)
    reps = orbit_representatives(mats, test_field, rep.dim, cap)
    by_fp: Dict[Tuple[Scalar, ...], Point] = {}
    witness = None
    for pt in reps:
        fp = _fingerprint(invs, pt)
        other = by_fp.get(fp)
        if other is not None:
            witness = Witness(
                v=other, w=pt, degree=sep_set.max_degree, values=fp,
                orbit_of_v=tuple(orbit_of(mats, other, test_field)),
                note="distinct orbits agree on all invariants up to the stated degree")
            break
        by_fp[fp] = pt
    n_orbits = len(reps)
    report = SeparationReport(
        field=test_field,
        degree=sep_set.max_degree,
        outcome="witness" if witness else "separated",
        orbit_count=n_orbits,
        pair_count=n_orbits * (n_orbits - 1) // 2,
        witness=witness,
        elapsed=time.perf_counter() - start)
    return report


# ---------------------------------------------------------------------------
# Minimal-separating-degree search
# ---------------------------------------------------------------------------

@dataclass
class DegreeSearchReport:
    """Ascending-degree search over one finite field.

    certified_lower comes from the largest witness degree (+1) and is valid
    over the algebraic closure; first_pass_degree is finite-field evidence;
    theorem_upper is the unconditional group-order ceiling."""

    field: FieldSpec
    d_max: int
    certified_lower: int
    first_pass_degree: Optional[int]
    theorem_upper: int
    witness: Optional[Witness]
    per_degree: Tuple[Tuple[int, str], ...]
    elapsed: float

    @property
    def exact(self) -> bool:
        return self.certified_lower == self.theorem_upper

    def verdict(self) -> dict:
        return {
            "verdict": "exact" if self.exact else "bounded",
            "certified_lower": self.certified_lower,
            "evidence_upper": self.first_pass_degree,
            "theorem_upper": self.theorem_upper,
        }

    def to_json(self) -> dict:
        out = self.verdict()
        out.update({
            "field": {"p": self.field.p, "k": self.field.k},
            "d_max": self.d_max,
            "per_degree": [{"degree": d, "outcome": o} for d, o in self.per_degree],
            "timing": self.elapsed,
        })
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def separating_degree_search(rep: Representation, group: GroupElements,
                             field: Optional[FieldSpec] = None,
                             d_max: Optional[int] = None,
                             cap: int = DEFAULT_POINT_CAP) -> DegreeSearchReport:
    """Ascending-degree loop over cumulative invariant slices.

    Stops at the first degree whose slices separate all orbit pairs over the
    test field; the largest witnessed degree certifies the lower bound."""
    start = time.perf_counter()
    test_field = field if field is not None else rep.field
    if d_max is None:
        d_max = group.order
    mats = _embedded_matrices(group.elements, rep.field, test_field)
    reps = orbit_representatives(mats, test_field, rep.dim, cap)
    fingerprints: List[List[Scalar]] = [[] for _ in reps]
    best_witness = None
    per_degree = []
    first_pass = None
    cumulative: List[Polynomial] = []
    for d in range(1, d_max + 1):
        new_basis = invariant_slice(rep, group, d).basis
        cumulative.extend(new_basis)
        new_embedded = _embedded_invariants(new_basis, test_field)
        by_fp: Dict[tuple, int] = {}
        witness_pair = None
        for idx, pt in enumerate(reps):
            fingerprints[idx].extend(f.evaluate(pt) for f in new_embedded)
            key = tuple(fingerprints[idx])
            other = by_fp.get(key)
            if other is not None and witness_pair is None:
                witness_pair = (other, idx)
            if other is None:
                by_fp[key] = idx
        if witness_pair is None:
            per_degree.append((d, "separated"))
            first_pass = d
            break
        i, j = witness_pair
        best_witness = Witness(
            v=reps[i], w=reps[j], degree=d,
            values=tuple(fingerprints[i]),
            orbit_of_v=tuple(orbit_of(mats, reps[i], test_field)),
            note="distinct orbits agree on all invariants up to the stated degree")
        per_degree.append((d, "witness"))
        if d >= group.order:
            raise InternalCheckError(
                "distinct orbits of a finite group agree on all invariants up to |G|; "
                "this cannot happen - engine self-test failed")
    certified_lower = best_witness.degree + 1 if best_witness else 1
    return DegreeSearchReport(
        field=test_field, d_max=d_max, certified_lower=certified_lower,
        first_pass_degree=first_pass, theorem_upper=group.order,
        witness=best_witness, per_degree=tuple(per_degree),
        elapsed=time.perf_counter() - start)


def escalation_fields(base: FieldSpec, dim: int, cap: int = DEFAULT_POINT_CAP,
                      steps: int = 3) -> List[FieldSpec]:
    """Evidence schedule F_{q}, F_{q^2}, F_{q^3}, ... while q^(i*dim) stays
    under the point cap (the base field is always included)."""
    if base.p == 0:
        raise ValueError("escalation needs a finite base field")
    out = [base]
    for i in range(2, steps + 1):
        k = base.k * i
        if (base.p ** k) ** dim > cap:
            break
        out.append(FieldSpec.get(base.p, k) if k > 1 else FieldSpec.get(base.p))
    return out


@dataclass
class EvidenceReport:
    """Merged result of degree searches over an escalation schedule."""

    reports: Tuple[DegreeSearchReport, ...]

    @property
    def certified_lower(self) -> int:
        return max(r.certified_lower for r in self.reports)

    @property
    def evidence_upper(self) -> Optional[int]:
        uppers = [r.first_pass_degree for r in self.reports]
        if any(u is None for u in uppers):
            return None
        return max(uppers)

    @property
    def theorem_upper(self) -> int:
        return self.reports[0].theorem_upper

    def to_json(self) -> dict:
        return {
            "certified_lower": self.certified_lower,
            "evidence_upper": self.evidence_upper,
            "theorem_upper": self.theorem_upper,
            "fields": [r.to_json() for r in self.reports],
        }


def separating_degree_evidence(rep: Representation, group: GroupElements,
                               d_max: Optional[int] = None,
                               cap: int = DEFAULT_POINT_CAP,
                               steps: int = 3) -> EvidenceReport:
    fields = escalation_fields(rep.field, rep.dim, cap, steps)
    return EvidenceReport(tuple(
        separating_degree_search(rep, group, f, d_max, cap) for f in fields))


# ---------------------------------------------------------------------------
# Witness checks in closed form (fixed-point and parametric families)
# ---------------------------------------------------------------------------

def witness_against_zero(rep: Representation, group: GroupElements,
                         v: Point, bound: int) -> Witness:
    """Certify a lower bound via the pair (v, 0): every invariant slice of
    degree 1..bound-1 must vanish at v (positive-degree invariants vanish at 0
    trivially), and some degree-`bound` invariant must not.

    Raises WitnessConstructionError when a lower-degree invariant is nonzero
    at v (the construction was misused)."""
    v = tuple(rep.field.scalar(x) for x in v)
    zero_pt = tuple(rep.field.zero for _ in range(rep.dim))
    in_same, orbit = same_orbit(group, v, zero_pt)
    if in_same:
        raise WitnessConstructionError("v is the zero vector; the pair is one orbit")
    values = []
    for d in range(1, bound):
        for f in invariant_slice(rep, group, d).basis:
            val = f.evaluate(v)
            if val.rep:
                raise WitnessConstructionError(
                    f"degree-{d} invariant {f} is nonzero at the witness point")
            values.append(val)
    top = None
    for f in invariant_slice(rep, group, bound).basis:
        if f.evaluate(v).rep:
            top = f
            break
    if top is None:
        raise WitnessConstructionError(
            f"no degree-{bound} invariant is nonzero at the witness point")
    return Witness(v=v, w=zero_pt, degree=bound - 1, values=tuple(values),
                   orbit_of_v=tuple(orbit), separating_invariant=top,
                   note="fixed-point witness against the zero vector")


def _twist_pair_same_orbit_closure(field: FieldSpec, n: int, v: Point, w: Point) -> bool:
    """Orbit membership for the V + twisted-V family over the algebraic
    closure, where s -> s^{p^n} is onto."""
    a0, a1, b0, b1 = v
    w0, w1, w2, w3 = w
    if a1 != w1 or b1 != w3:
        return False
    pn = field.p ** n
    if a1.rep:
        s = (w0 - a0) / a1
        return w2 == b0 + (s ** pn) * b1
    if w0 != a0:
        return False
    if b1.rep:
        return True
    return w2 == b0


def parametric_pair_witness(act: ParametricAction, v: Point, w: Point,
                            bound: int) -> Witness:
    """Witness for a parametric family: parametric slices of degree <=
    bound-1 agree on the pair, a degree-`bound` invariant separates it.

    Distinct orbits follow rigorously from the separating invariant itself;
    numeric specializations of the parameter are spot-checked as well, and
    the twist-pair family additionally runs its closed-form orbit test."""
    field = act.field
    v = tuple(field.scalar(x) for x in v)
    w = tuple(field.scalar(x) for x in w)
    values = []
    for d in range(1, bound):
        for f in invariant_slice_parametric(act, d).basis:
            fv, fw = f.evaluate(v), f.evaluate(w)
            if fv != fw:
                raise WitnessConstructionError(
                    f"pair separated at degree {d} already, below the claimed bound {bound}")
            values.append(fv)
    top = None
    for f in invariant_slice_parametric(act, bound).basis:
        if f.evaluate(v) != f.evaluate(w):
            top = f
            break
    if top is None:
        raise WitnessConstructionError(
            f"no degree-{bound} parametric invariant separates the pair")
    notes = ["separating invariant proves the orbits distinct"]
    if act.kind == "additive":
        samples = (field.elements() if field.p else
                   [field.scalar(t) for t in range(-3, 4)])
        for s in samples:
            mat = act.specialize(s)
            if mat_vec(mat, v, field) == w:
                raise WitnessConstructionError(
                    f"specialization s={s} maps v to w; the pair shares an orbit")
        notes.append(f"{len(samples)} parameter specializations spot-checked")
        if (len(act.families) == 2 and act.families[0] == ("standard", None)
                and act.families[1][0] == "twist"):
            n = act.families[1][1]
            if _twist_pair_same_orbit_closure(field, n, v, w):
                raise WitnessConstructionError(
                    "closed-form orbit description puts the pair in one orbit")
            notes.append("closed-form orbit description confirms distinctness over the closure")
    return Witness(v=v, w=w, degree=bound - 1, values=tuple(values),
                   separating_invariant=top, note="; ".join(notes))


def minimal_parametric_invariant_degree(act: ParametricAction, d_max: int) -> Optional[int]:
    """Smallest positive degree with a nonzero parametric invariant slice."""
    for d in range(1, d_max + 1):
        if invariant_slice_parametric(act, d).basis:
            return d
    return None


# ---------------------------------------------------------------------------
# Polarized elementary symmetric separating sets (symmetric-group case)
# ---------------------------------------------------------------------------

def polarized_elementary_symmetric(dim_w: int, d: int,
                                   field: FieldSpec) -> SeparatingSet:
    """Polarizations of the elementary symmetric functions e_1..e_d of the d
    slot variables across the dim_w coordinate directions: a separating set
    for the symmetric group permuting the d slots of W^d, of degree <= d.

    Polynomials live on W^d with slot-major variables (slot i occupies
    indices i*dim_w..(i+1)*dim_w-1)."""
    if d < 1 or dim_w < 1:
        raise ValueError("need at least one slot and one coordinate direction")
    members: List[Polynomial] = []
    # copy-major index (copy j, slot i) = j*d + i  ->  slot-major i*dim_w + j
    relabel_map = [0] * (dim_w * d)
    for j in range(dim_w):
        for i in range(d):
            relabel_map[j * d + i] = i * dim_w + j
    for r in range(1, d + 1):
        e_r = elementary_symmetric(field, d, r)
        for _idx, component in sorted(polarize(e_r, dim_w).items()):
            members.append(component.relabel(relabel_map, dim_w * d))
    max_deg = max(f.degree() for f in members)
    return SeparatingSet(tuple(members), max_deg, provenance="polarized elementary symmetric")


def slot_permutation_matrices(field: FieldSpec, d: int, dim_w: int,
                              perms: Sequence[Sequence[int]]) -> List[Matrix]:
    """Block matrices permuting the d slots of W^d (slot-major convention)."""
    out = []
    for perm in perms:
        images = [0] * (d * dim_w)
        for i in range(d):
            for j in range(dim_w):
                images[i * dim_w + j] = perm[i] * dim_w + j
        out.append(permutation_matrix(field, images))
    return out


# ---------------------------------------------------------------------------
# Morphism pipelines: the subgroup-index and normal-quotient constructions
# ---------------------------------------------------------------------------

@dataclass
class MorphismPipeline:
    """An ordered composition of polynomial maps with a degree budget.

    The composite degree (max component degree of the flattened composition)
    never exceeds the product of the stage degree bounds; `components`
    performs the symbolic composition and enforces that."""

    field: FieldSpec
    domain_dim: int
    stages: Tuple[Tuple[Polynomial, ...], ...]

    def degree_bound(self) -> int:
        bound = 1
        for stage in self.stages:
            bound *= max((max(f.degree(), 0) for f in stage), default=0)
        return bound

    def components(self) -> Tuple[Polynomial, ...]:
        comp = list(self.stages[0])
        for stage in self.stages[1:]:
            comp = [q.compose(comp) for q in stage]
        bound = self.degree_bound()
        for f in comp:
            if f.degree() > bound:
                raise AssertionError("composite degree exceeded the stage-product bound")
        return tuple(comp)

    def degree(self) -> int:
        """Degree of the composed map: max component degree."""
        return max((max(f.degree(), 0) for f in self.components()), default=0)


def coset_polarization_morphism(phi: Sequence[Polynomial],
                                cosets: CosetDecomposition) -> MorphismPipeline:
    """From a subgroup-separating map to a full-group-separating map: stage 1
    evaluates phi at every right-coset representative translate, stage 2
    applies the polarized elementary symmetric functions of the coset slots.

    Components of the composition are exactly invariant under the whole
    group, of degree <= [G:H] * deg(phi)."""
    phi = list(phi)
    if not phi:
        raise ValueError("phi has no components")
    field = phi[0].field
    dim = phi[0].nvars
    for f in phi:
        for h in cosets.subgroup:
            if f.substitute_linear(h) != f:
                raise NotInvariantError("phi components must be subgroup-invariant")
    d = cosets.index
    m = len(phi)
    stage1 = tuple(f.substitute_linear(g_i)
                   for g_i in cosets.representatives for f in phi)
    stage2 = polarized_elementary_symmetric(m, d, field).members
    return MorphismPipeline(field, dim, (stage1, stage2))


def span_coordinates(basis: Sequence[Polynomial], f: Polynomial,
                     field: FieldSpec) -> Optional[Tuple[Scalar, ...]]:
    """Coordinates of f in the linear span of basis, or None."""
    support = sorted({m for g in basis for m in g.terms} | set(f.terms))
    columns = [g.coefficient_vector(support) for g in basis]
    rows = [tuple(col[i] for col in columns) for i in range(len(support))]
    rhs = f.coefficient_vector(support)
    return solve(rows, rhs, field)


def quotient_action(phi: Sequence[Polynomial], generators: Sequence[Matrix],
                    field: FieldSpec) -> List[Matrix]:
    """Matrices D(g) with  (phi_1,...,phi_m)(g v) = D(g) (phi_1,...,phi_m)(v).

    Requires the span of phi to be stable under every generator; D is then a
    group homomorphism on the target coordinates."""
    mats = []
    for g in generators:
        columns = []
        for f in phi:
            coords = span_coordinates(phi, f.substitute_linear(g), field)
            if coords is None:
                raise NotInvariantError(
                    "the span of phi is not stable under the group; equivariance fails")
            columns.append(coords)
        # phi_j o g = sum_i C[i][j] phi_i; D = C^T so row j of D is column j of C
        mats.append(mat_from_rows([[columns[j][i] for i in range(len(phi))]
                                   for j in range(len(phi))]))
    return mats


def normal_composition(phi: Sequence[Polynomial], psi: Sequence[Polynomial],
                       group: GroupElements,
                       subgroup_elements: Sequence[Matrix]) -> MorphismPipeline:
    """Compose a subgroup-separating, group-equivariant map with a map
    separating the induced quotient action on its target.

    Requires the subgroup to be normal and the span of phi to be stable under
    the group; the composite is group-separating of degree <=
    deg(psi) * deg(phi)."""
    phi = list(phi)
    psi = list(psi)
    field = phi[0].field
    if not is_normal(group, subgroup_elements):
        raise ValueError("subgroup is not normal in the group")
    for f in phi:
        for h in subgroup_elements:
            if f.substitute_linear(h) != f:
                raise NotInvariantError("phi components must be subgroup-invariant")
    d_matrices = quotient_action(phi, group.generators(), field)
    for q in psi:
        for mat in d_matrices:
            if q.substitute_linear(mat) != q:
                raise NotInvariantError(
                    "psi is not invariant under the induced quotient action")
    return MorphismPipeline(field, phi[0].nvars, (tuple(phi), tuple(psi)))


def subgroup_invariant_map(rep: Representation, subgroup_elements: Sequence[Matrix],
                           d_max: int) -> List[Polynomial]:
    """Cumulative subgroup-invariant slice bases up to d_max: the canonical
    subgroup-separating polynomial map used by both pipeline constructions."""
    out: List[Polynomial] = []
    for d in range(1, d_max + 1):
        out.extend(invariant_slice_for_matrices(
            rep.field, rep.dim, subgroup_elements, d).basis)
    return out


def check_map_separates(components: Sequence[Polynomial], matrices: Sequence[Matrix],
                        field: FieldSpec, dim: int,
                        cap: int = DEFAULT_POINT_CAP) -> Optional[Tuple[Point, Point]]:
    """Brute-force orbit separation check of an arbitrary polynomial map;
    returns the first unseparated pair of distinct-orbit representatives, or
    None when every pair is told apart."""
    reps = orbit_representatives(matrices, field, dim, cap)
    by_fp: Dict[tuple, Point] = {}
    for pt in reps:
        fp = _fingerprint(components, pt)
        other = by_fp.get(fp)
        if other is not None:
            return other, pt
        by_fp[fp] = pt
    return None
