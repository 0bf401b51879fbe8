"""Degree-sliced invariant computation.

Invariant slices are exact nullspaces of the stacked substitution-minus-
identity operators of the generators on a degree-d coefficient space; no
averaging is involved, so all computations are valid in the modular case.
Orbit sums, the transfer to induced modules, the parametric (formal-s /
torus) slices, and the Hilbert-ideal slice test live here as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import FieldSpec, Scalar
from .linalg import Matrix, nullspace, rref
from .polys import Monomial, Polynomial, monomial_basis
from .reps import (CosetDecomposition, GroupElements, InducedModule,
                   ParametricAction, Representation)


class NonMonomialActionError(ValueError):
    """The action does not map monomials to scalar multiples of monomials."""


class NotInvariantError(ValueError):
    """A polynomial that was required to be invariant is not."""


class ModularityError(ValueError):
    """The Reynolds operator was requested although char K divides |G|."""


@dataclass
class InvariantSlice:
    """Basis of the homogeneous degree-d invariants of an action."""

    degree: int
    nvars: int
    field: FieldSpec
    basis: Tuple[Polynomial, ...]
    label: str = ""

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class OrbitSum:
    """Sum of the distinct monomials in the orbit of a source monomial."""

    monomial: Monomial
    polynomial: Polynomial
    orbit_size: int


def invariant_slice_for_matrices(field: FieldSpec, nvars: int,
                                 matrices: Sequence[Matrix], d: int,
                                 label: str = "") -> InvariantSlice:
    """Nullspace of the stacked (substitution-by-matrix minus identity) maps."""
    basis = monomial_basis(nvars, d)
    ncols = len(basis)
    zero = field.zero
    rows: List[List[Scalar]] = []
    for g in matrices:
        # column j of the action on the slice = coefficients of (monomial_j o g)
        columns = []
        for m in basis:
            image = Polynomial.from_monomial(field, nvars, m).substitute_linear(g)
            columns.append(image)
        for i, m_i in enumerate(basis):
            row = [zero] * ncols
            any_nonzero = False
            for j, image in enumerate(columns):
                c = image.terms.get(m_i)
                if j == i:
                    c = (c if c is not None else zero) - field.one
                if c is not None and c.rep:
                    row[j] = c
                    any_nonzero = True
            if any_nonzero:
                rows.append(row)
    vectors = nullspace(rows, field, ncols)
    polys = tuple(Polynomial(field, nvars, dict(zip(basis, vec))) for vec in vectors)
    return InvariantSlice(d, nvars, field, polys, label=label)


def invariant_slice(rep: Representation, group: Optional[GroupElements],
                    d: int) -> InvariantSlice:
    """Degree-d invariants of a finite matrix group (generator nullspace)."""
    matrices = rep.generators if rep.generators else ()
    return invariant_slice_for_matrices(rep.field, rep.dim, matrices, d, label=rep.label)


def cumulative_invariant_basis(rep: Representation, group: Optional[GroupElements],
                               d_max: int) -> List[Polynomial]:
    """Concatenated slice bases for degrees 1..d_max (constants omitted)."""
    out: List[Polynomial] = []
    for d in range(1, d_max + 1):
        out.extend(invariant_slice(rep, group, d).basis)
    return out


def orbit_sum(rep: Representation, group: GroupElements, m: Monomial) -> OrbitSum:
    """Sum of the distinct monomials in the group orbit of m, coefficient one.

    Requires an action sending monomials to scalar multiples of monomials;
    the result is checked for invariance, which can fail for genuinely signed
    monomial actions - use invariant_slice there instead.
    """
    field = rep.field
    nvars = rep.dim
    seen = set()
    for g in group.elements:
        image = Polynomial.from_monomial(field, nvars, m).substitute_linear(g)
        if len(image.terms) != 1:
            raise NonMonomialActionError(
                "action does not permute monomials up to scalars; use invariant_slice")
        seen.add(next(iter(image.terms)))
    orbit = sorted(seen)
    poly = Polynomial(field, nvars, {mon: field.one for mon in orbit})
    for g in rep.generators:
        if poly.substitute_linear(g) != poly:
            raise NotInvariantError(
                "orbit sum is not invariant (signed monomial action); use invariant_slice")
    return OrbitSum(tuple(m), poly, len(orbit))


# ---------------------------------------------------------------------------
# Parametric slices: invariance as an identity in the formal parameter
# ---------------------------------------------------------------------------

def invariant_slice_parametric(act: ParametricAction, d: int) -> InvariantSlice:
    """Degree-d polynomials fixed by the whole parametric family.

    Additive kind: f o A(s) = f identically in s, i.e. every positive s-power
    coefficient of the induced action on the degree-d slice kills f.  Torus
    kind: the weight-zero monomials.
    """
    field = act.field
    n = act.dim
    basis = monomial_basis(n, d)
    if act.kind == "torus":
        polys = tuple(Polynomial.from_monomial(field, n, m) for m in basis
                      if sum(e * w for e, w in zip(m, act.weights)) == 0)
        return InvariantSlice(d, n, field, polys, label=act.label)

    # work in K[s, x_1..x_n] with s as variable 0
    big = n + 1
    x_vars = [Polynomial.variable(field, big, j + 1) for j in range(n)]
    inner = []
    for i in range(n):
        form = Polynomial.zero(field, big)
        for j in range(n):
            entry = act.matrix[i][j]
            if entry.is_zero():
                continue
            lifted = entry.relabel([0], big)
            form = form + lifted * x_vars[j]
        inner.append(form)
    ncols = len(basis)
    zero = field.zero
    rows: Dict[Tuple[int, Monomial], List[Scalar]] = {}
    for j, m in enumerate(basis):
        image = Polynomial.from_monomial(field, n, m).compose(inner)
        for big_m, c in image.terms.items():
            s_exp = big_m[0]
            x_m = big_m[1:]
            if s_exp == 0:
                if x_m != m or c != field.one:
                    raise ValueError("parametric family does not specialize to the identity at s=0")
                continue
            row = rows.get((s_exp, x_m))
            if row is None:
                row = [zero] * ncols
                rows[(s_exp, x_m)] = row
            row[j] = c
    row_list = [rows[key] for key in sorted(rows.keys())]
    vectors = nullspace(row_list, field, ncols)
    polys = tuple(Polynomial(field, n, dict(zip(basis, vec))) for vec in vectors)
    return InvariantSlice(d, n, field, polys, label=act.label)


def cumulative_parametric_basis(act: ParametricAction, d_max: int) -> List[Polynomial]:
    out: List[Polynomial] = []
    for d in range(1, d_max + 1):
        out.extend(invariant_slice_parametric(act, d).basis)
    return out


# ---------------------------------------------------------------------------
# Transfer to induced modules
# ---------------------------------------------------------------------------

def transfer_to_induced(f: Polynomial, induced: InducedModule) -> Polynomial:
    """Sum of f over the coset blocks: the degree-preserving preimage of f
    under restriction-to-the-first-block.

    Checks that f is invariant under the subgroup's block action, and that
    the transferred polynomial is invariant under the induced generators.
    """
    sub = induced.sub
    cosets = induced.cosets
    if f.nvars != sub.dim:
        raise ValueError("polynomial does not live on the block module")
    if f.degree() < 1:
        raise ValueError("transfer is defined for homogeneous positive-degree invariants")
    for h in sub.elements:
        if f.substitute_linear(sub.matrix_for[h]) != f:
            raise NotInvariantError("input polynomial is not invariant under the subgroup")
    d = cosets.index
    m = sub.dim
    n = d * m
    total = Polynomial.zero(f.field, n)
    for i in range(d):
        block_vars = [i * m + a for a in range(m)]
        total = total + f.relabel(block_vars, n)
    for g in induced.rep.generators:
        if total.substitute_linear(g) != total:
            raise NotInvariantError("transferred polynomial failed the invariance check")
    return total


# ---------------------------------------------------------------------------
# Hilbert-ideal slice test
# ---------------------------------------------------------------------------

@dataclass
class HilbertIdealReport:
    """Degree-d slice of the ideal generated by the positive-degree invariants
    of degree < d, compared against the degree-d invariants."""

    degree: int
    ideal_slice_rank: int
    invariant_dimension: int
    missed: Tuple[Polynomial, ...]

    @property
    def generated_below(self) -> bool:
        return not self.missed


def hilbert_ideal_slice_test(rep: Representation, group: Optional[GroupElements],
                             d: int) -> HilbertIdealReport:
    """Which degree-d invariants lie outside span{h * m : h invariant,
    0 < deg h < d, m a monomial of degree d - deg h}."""
    field = rep.field
    n = rep.dim
    basis_d = monomial_basis(n, d)
    span_rows: List[Tuple[Scalar, ...]] = []
    for e in range(1, d):
        slice_e = invariant_slice(rep, group, e)
        if not slice_e.basis:
            continue
        for h in slice_e.basis:
            for m in monomial_basis(n, d - e):
                prod = h * Polynomial.from_monomial(field, n, m)
                span_rows.append(prod.coefficient_vector(basis_d))
    if span_rows:
        reduced, pivots, rank_ = rref(span_rows, field)
    else:
        reduced, pivots, rank_ = [], [], 0
    slice_d = invariant_slice(rep, group, d)
    missed = []
    for f in slice_d.basis:
        vec = list(f.coefficient_vector(basis_d))
        residual = _reduce_vector(reduced, pivots, vec, field)
        if any(x.rep for x in residual):
            missed.append(f)
    return HilbertIdealReport(d, rank_, slice_d.dimension, tuple(missed))


def _reduce_vector(rref_rows, pivots, vec, field: FieldSpec):
    out = list(vec)
    for r, c in enumerate(pivots):
        factor = out[c]
        if factor.rep:
            row = rref_rows[r]
            for j in range(c, len(out)):
                if row[j].rep:
                    out[j] = out[j] - factor * row[j]
    return out


# ---------------------------------------------------------------------------
# Reynolds operator (non-modular convenience; never used by the slice engine)
# ---------------------------------------------------------------------------

def reynolds_operator(rep: Representation, group: GroupElements,
                      f: Polynomial) -> Polynomial:
    """Group average (1/|G|) sum_g f o g; only defined when char K does not
    divide |G| (non-modular case)."""
    p = rep.field.p
    if p and group.order % p == 0:
        raise ModularityError(
            f"characteristic {p} divides |G| = {group.order}; averaging unavailable")
    total = Polynomial.zero(rep.field, rep.dim)
    for g in group.elements:
        total = total + f.substitute_linear(g)
    return total * rep.field.scalar(group.order).inverse()
