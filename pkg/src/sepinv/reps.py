"""Finite matrix groups from generators, explicit module constructors, coset
decompositions, induced modules, and the parametric (additive-group / torus)
actions that are never enumerated.

Group elements are tuples-of-tuples of Scalars so they hash and compare by
value; enumeration is a deterministic breadth-first closure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .fields import FieldSpec, FieldConstructionError, Scalar, root_of_unity
from .linalg import (Matrix, identity_matrix, mat_from_rows, mat_inv, mat_mul,
                     mat_pow, mat_vec)
from .polys import Polynomial


class GroupCapExceededError(RuntimeError):
    """Closure enumeration exceeded the configured cap (group too large or infinite)."""


class ConstructionError(ValueError):
    """Inconsistent representation / subgroup / coset data."""


@dataclass(frozen=True)
class Representation:
    """A matrix group given by invertible generators acting on K^dim."""

    field: FieldSpec
    dim: int
    generators: Tuple[Matrix, ...]
    label: str = ""

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim or any(len(row) != self.dim for row in g):
                raise ConstructionError("generator is not square of the stated dimension")
            mat_inv(g, self.field)  # raises SingularMatrixError for singular input

    def identity(self) -> Matrix:
        return identity_matrix(self.field, self.dim)


class GroupElements:
    """Complete, closure-verified element list of a finite matrix group.

    The element order is the deterministic breadth-first enumeration order,
    with the identity first.
    """

    def __init__(self, field: FieldSpec, dim: int, elements: Sequence[Matrix],
                 generator_indices: Sequence[int]):
        self.field = field
        self.dim = dim
        self.elements: Tuple[Matrix, ...] = tuple(elements)
        self.generator_indices = tuple(generator_indices)
        self._index: Dict[Matrix, int] = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> Matrix:
        return self.elements[0]

    def index(self, g: Matrix) -> int:
        return self._index[g]

    def __contains__(self, g: Matrix) -> bool:
        return g in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def generators(self) -> Tuple[Matrix, ...]:
        return tuple(self.elements[i] for i in self.generator_indices)

    def inverse(self, g: Matrix) -> Matrix:
        return mat_inv(g, self.field)

    def multiply(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(a, b, self.field)


def enumerate_group(rep: Representation, cap: int = 10000) -> GroupElements:
    """Breadth-first closure of the generators under multiplication.

    Deterministic element order; raises GroupCapExceededError past `cap`.
    """
    ident = rep.identity()
    elements: List[Matrix] = [ident]
    seen = {ident}
    gen_indices = []
    for g in rep.generators:
        if g not in seen:
            seen.add(g)
            elements.append(g)
        gen_indices.append(elements.index(g))
    frontier = list(elements)
    while frontier:
        new_frontier = []
        for x in frontier:
            for g in rep.generators:
                y = mat_mul(x, g, rep.field)
                if y not in seen:
                    if len(elements) >= cap:
                        raise GroupCapExceededError(
                            f"group closure exceeded cap {cap}; group too large or infinite")
                    seen.add(y)
                    elements.append(y)
                    new_frontier.append(y)
        frontier = new_frontier
    return GroupElements(rep.field, rep.dim, elements, gen_indices)


def element_orders(group: GroupElements) -> List[int]:
    """Order of every element, in enumeration order."""
    ident = group.identity()
    out = []
    for g in group:
        power = g
        n = 1
        while power != ident:
            power = mat_mul(power, g, group.field)
            n += 1
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Explicit module constructors
# ---------------------------------------------------------------------------

def permutation_matrix(field: FieldSpec, images: Sequence[int]) -> Matrix:
    """Matrix sending basis vector e_i to e_{images[i]}."""
    n = len(images)
    zero, one = field.zero, field.one
    rows = [[zero] * n for _ in range(n)]
    for i, j in enumerate(images):
        rows[j][i] = one
    return mat_from_rows(rows)


def permutation_module(field: FieldSpec, n: int, generators: Sequence[Sequence[int]],
                       label: str = "") -> Representation:
    """Permutation representation from one-line images (generator[i] = image of i)."""
    mats = []
    for perm in generators:
        if sorted(perm) != list(range(n)):
            raise ConstructionError(f"{list(perm)} is not a permutation of 0..{n - 1}")
        mats.append(permutation_matrix(field, perm))
    return Representation(field, n, tuple(mats), label or f"perm({n})")


def cyclic_module(r: int, p: int, k: int, field: FieldSpec) -> Representation:
    """The q = p^k dimensional module of the cyclic group of order r*q:
    one generator is zeta * identity (zeta a primitive r-th root of unity),
    the other the coordinate shift v_i -> v_{i+1}."""
    if field.p != p:
        raise ConstructionError(f"field characteristic {field.p} does not match p={p}")
    if p == 0 or not k >= 1:
        raise ConstructionError("p must be a prime and k >= 1")
    from math import gcd
    if gcd(r, p) != 1:
        raise ConstructionError("r must be coprime to p")
    zeta = root_of_unity(field, r)  # raises if the field lacks the root
    q = p ** k
    zero = field.zero
    scale = mat_from_rows([[zeta if i == j else zero for j in range(q)] for i in range(q)])
    shift = permutation_matrix(field, [(i + 1) % q for i in range(q)])
    gens = (scale, shift) if r > 1 else (shift,)
    return Representation(field, q, gens, label=f"cyclic(r={r},q={q})")


def dihedral_module(p: int, r: int, field: FieldSpec) -> Representation:
    """The q = p^r dimensional module of the dihedral group of order 2q
    (p odd): rotation v_i -> v_{i+1} and reflection v_i -> -v_{-i}."""
    if p == 2:
        raise ConstructionError("the dihedral construction requires odd characteristic")
    if field.p != p:
        raise ConstructionError(f"field characteristic {field.p} does not match p={p}")
    q = p ** r
    rho = permutation_matrix(field, [(i + 1) % q for i in range(q)])
    zero, one = field.zero, field.one
    rows = [[zero] * q for _ in range(q)]
    for i in range(q):
        rows[(q - i) % q][i] = -one
    sigma = mat_from_rows(rows)
    rep = Representation(field, q, (rho, sigma), label=f"dihedral(2*{q})")
    # relation sanity: ord(sigma) = 2, ord(rho) = q, sigma rho sigma^-1 = rho^-1
    if mat_mul(sigma, sigma, field) != identity_matrix(field, q):
        raise ConstructionError("reflection is not an involution")
    if mat_mul(mat_mul(sigma, rho, field), sigma, field) != mat_inv(rho, field):
        raise ConstructionError("dihedral relation failed")
    return rep


def regular_representation(group: GroupElements, label: str = "") -> Representation:
    """Left translation on the |G|-dimensional space with basis indexed by
    the group elements in enumeration order."""
    n = group.order
    field = group.field
    gens = []
    for g in group.generators():
        images = [group.index(mat_mul(g, h, field)) for h in group.elements]
        gens.append(permutation_matrix(field, images))
    if not gens:
        gens = [identity_matrix(field, n)]
    return Representation(field, n, tuple(gens), label=label or "regular")


# ---------------------------------------------------------------------------
# Cosets, subgroup actions, induced modules
# ---------------------------------------------------------------------------

@dataclass
class CosetDecomposition:
    """Right cosets H g_i of a subgroup, with deterministic representatives:
    the first representative is the identity, later ones are the first
    enumeration-order elements not yet covered."""

    group: GroupElements
    subgroup: Tuple[Matrix, ...]
    representatives: Tuple[Matrix, ...]

    @property
    def index(self) -> int:
        return len(self.representatives)

    def coset_of(self, g: Matrix) -> int:
        """Index i with H g_i = H g."""
        field = self.group.field
        h_set = set(self.subgroup)
        for i, rep in enumerate(self.representatives):
            # H g_i = H g  iff  g g_i^-1 in H
            if mat_mul(g, mat_inv(rep, field), field) in h_set:
                return i
        raise ConstructionError("element lies in no coset; inconsistent subgroup data")


def right_cosets(group: GroupElements, subgroup_elements: Sequence[Matrix]) -> CosetDecomposition:
    field = group.field
    h_list = tuple(subgroup_elements)
    h_set = set(h_list)
    if group.identity() not in h_set:
        raise ConstructionError("subgroup does not contain the identity")
    for h in h_list:
        if h not in group:
            raise ConstructionError("subgroup element does not belong to the group")
    covered = set()
    reps = []
    for g in group.elements:
        if g in covered:
            continue
        reps.append(g)
        for h in h_list:
            covered.add(mat_mul(h, g, field))
    if len(reps) * len(h_list) != group.order:
        raise ConstructionError("cosets do not partition the group; subgroup not closed?")
    return CosetDecomposition(group, h_list, tuple(reps))


def subgroup_closure(group: GroupElements, generators: Sequence[Matrix]) -> Tuple[Matrix, ...]:
    """Closure of the given elements inside an already-enumerated group."""
    field = group.field
    elems = [group.identity()]
    seen = {group.identity()}
    frontier = list(elems)
    gens = list(generators)
    for g in gens:
        if g not in group:
            raise ConstructionError("subgroup generator does not belong to the group")
        if g not in seen:
            seen.add(g)
            elems.append(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mat_mul(x, g, field)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(elems)


def is_normal(group: GroupElements, subgroup_elements: Sequence[Matrix]) -> bool:
    field = group.field
    h_set = set(subgroup_elements)
    for g in group.generators():
        g_inv = mat_inv(g, field)
        for h in subgroup_elements:
            if mat_mul(mat_mul(g, h, field), g_inv, field) not in h_set:
                return False
    return True


@dataclass
class SubgroupAction:
    """A representation of a subgroup: each subgroup element (a matrix of the
    ambient group) is mapped to its matrix on the block module."""

    elements: Tuple[Matrix, ...]
    matrix_for: Mapping[Matrix, Matrix]
    dim: int
    field: FieldSpec

    @staticmethod
    def trivial(subgroup_elements: Sequence[Matrix], field: FieldSpec) -> "SubgroupAction":
        one = identity_matrix(field, 1)
        mapping = {h: one for h in subgroup_elements}
        return SubgroupAction(tuple(subgroup_elements), mapping, 1, field)

    @staticmethod
    def restriction(subgroup_elements: Sequence[Matrix], field: FieldSpec) -> "SubgroupAction":
        mapping = {h: h for h in subgroup_elements}
        dim = len(subgroup_elements[0])
        return SubgroupAction(tuple(subgroup_elements), mapping, dim, field)


@dataclass
class InducedModule:
    """An induced representation together with its block bookkeeping."""

    rep: Representation
    sub: SubgroupAction
    cosets: CosetDecomposition

    @property
    def block_dim(self) -> int:
        return self.sub.dim

    @property
    def block_count(self) -> int:
        return self.cosets.index


def induced_module(sub: SubgroupAction, group: GroupElements,
                   cosets: CosetDecomposition) -> InducedModule:
    """Induced module: block i of the direct sum carries the coset
    representative g_i; g in G sends block sigma(i) to block i acted on by
    h_i = g_i g g_{sigma(i)}^-1, where H g_i g = H g_{sigma(i)}.

    The first coset representative is the identity, so the block module sits
    inside block 0 compatibly with the subgroup action."""
    if set(sub.elements) != set(cosets.subgroup):
        raise ConstructionError("subgroup action and coset decomposition disagree")
    field = group.field
    d = cosets.index
    m = sub.dim
    n = d * m
    zero = field.zero
    gens = []
    for g in group.generators():
        rows = [[zero] * n for _ in range(n)]
        for i, gi in enumerate(cosets.representatives):
            target = mat_mul(gi, g, field)
            sigma_i = cosets.coset_of(target)
            h_i = mat_mul(target, mat_inv(cosets.representatives[sigma_i], field), field)
            block = sub.matrix_for[h_i]
            for a in range(m):
                for b in range(m):
                    rows[i * m + a][sigma_i * m + b] = block[a][b]
        gens.append(mat_from_rows(rows))
    rep = Representation(field, n, tuple(gens), label=f"induced(d={d},m={m})")
    return InducedModule(rep, sub, cosets)


# ---------------------------------------------------------------------------
# Parametric actions: the additive group in a formal parameter s, and tori
# ---------------------------------------------------------------------------

@dataclass
class ParametricAction:
    """A one-parameter matrix family A(s) (additive kind, entries univariate
    polynomials in s) or a diagonal torus action given by integer weights."""

    kind: str                      # "additive" | "torus"
    field: FieldSpec
    dim: int
    matrix: Optional[Tuple[Tuple[Polynomial, ...], ...]] = None
    weights: Optional[Tuple[int, ...]] = None
    families: Tuple[Tuple[str, Optional[int]], ...] = ()
    label: str = ""

    def max_s_degree(self) -> int:
        if self.kind != "additive":
            raise ConstructionError("only additive families carry an s-matrix")
        return max((entry.degree() for row in self.matrix for entry in row), default=0)

    def specialize(self, value: Scalar) -> Matrix:
        """Numeric matrix at s = value (torus: diag(value^w), value nonzero)."""
        value = self.field.scalar(value)
        if self.kind == "additive":
            return mat_from_rows(
                [[entry.evaluate((value,)) for entry in row] for row in self.matrix])
        if not value.rep:
            raise ZeroDivisionError("torus parameter must be invertible")
        zero = self.field.zero
        return mat_from_rows(
            [[value ** w if i == j else zero for j, _ in enumerate(self.weights)]
             for i, w in enumerate(self.weights)])


def _s_poly(field: FieldSpec, coeffs: Sequence) -> Polynomial:
    return Polynomial(field, 1, {(i,): field.scalar(c) for i, c in enumerate(coeffs)})


def _standard_block(field: FieldSpec) -> List[List[Polynomial]]:
    one = _s_poly(field, [1])
    zero = Polynomial.zero(field, 1)
    s = _s_poly(field, [0, 1])
    return [[one, s], [zero, one]]


def _twist_block(field: FieldSpec, n: int) -> List[List[Polynomial]]:
    if field.p == 0:
        raise ConstructionError("Frobenius twists require positive characteristic")
    if n < 1:
        raise ConstructionError("twist exponent must be >= 1")
    one = _s_poly(field, [1])
    zero = Polynomial.zero(field, 1)
    s_pn = Polynomial(field, 1, {(field.p ** n,): field.one})
    return [[one, s_pn], [zero, one]]


def _dual_block(field: FieldSpec) -> List[List[Polynomial]]:
    one = _s_poly(field, [1])
    zero = Polynomial.zero(field, 1)
    minus_s = Polynomial(field, 1, {(1,): -field.one})
    return [[one, zero], [minus_s, one]]


def _sym_power_block(field: FieldSpec, m: int) -> List[List[Polynomial]]:
    if field.p != 0:
        raise ConstructionError("symmetric-power blocks are used in characteristic zero only")
    if m < 1:
        raise ConstructionError("symmetric power must be >= 1")
    size = m + 1
    rows = []
    for j in range(size):
        row = []
        for i in range(size):
            if j > i:
                row.append(Polynomial.zero(field, 1))
            else:
                row.append(Polynomial(field, 1, {(i - j,): field.scalar(comb(i, j))}))
        rows.append(row)
    return rows


_BLOCK_BUILDERS = {
    "standard": lambda field, param: _standard_block(field),
    "twist": _twist_block,
    "dual": lambda field, param: _dual_block(field),
    "sym": _sym_power_block,
}


def additive_module(families: Sequence, field: FieldSpec, label: str = "") -> ParametricAction:
    """Direct sum of additive-group blocks.  Each family entry is a tag
    ("standard", "dual") or a (tag, parameter) pair (("twist", n), ("sym", m))."""
    blocks = []
    normalized = []
    for fam in families:
        if isinstance(fam, str):
            tag, param = fam, None
        else:
            tag, param = fam
        builder = _BLOCK_BUILDERS.get(tag)
        if builder is None:
            raise ConstructionError(f"unknown additive family tag {tag!r}")
        blocks.append(builder(field, param))
        normalized.append((tag, param))
    dim = sum(len(b) for b in blocks)
    zero = Polynomial.zero(field, 1)
    rows = [[zero] * dim for _ in range(dim)]
    offset = 0
    for block in blocks:
        size = len(block)
        for i in range(size):
            for j in range(size):
                rows[offset + i][offset + j] = block[i][j]
        offset += size
    return ParametricAction("additive", field, dim,
                            matrix=tuple(tuple(r) for r in rows),
                            families=tuple(normalized), label=label)


def twist_pair_module(field: FieldSpec, n: int) -> ParametricAction:
    """V + V twisted by the n-th Frobenius power, in characteristic p > 0;
    s acts by (a0, a1, b0, b1) -> (a0 + s a1, a1, b0 + s^{p^n} b1, b1)."""
    return additive_module(["standard", ("twist", n)], field,
                           label=f"twist-pair(p={field.p},n={n})")


def dual_sym_module(field: FieldSpec, n: int) -> ParametricAction:
    """V* + S^n(V) over the rationals; the characteristic-zero witness family."""
    return additive_module(["dual", ("sym", n)], field, label=f"dual-sym(n={n})")


def torus_module(weights: Sequence[int], field: FieldSpec = None) -> ParametricAction:
    """Diagonal one-dimensional-torus action t -> diag(t^w_i), kept symbolic."""
    if not weights:
        raise ConstructionError("weight vector must be nonempty")
    from .fields import QQ
    f = field if field is not None else QQ
    return ParametricAction("torus", f, len(weights), weights=tuple(int(w) for w in weights),
                            label=f"torus{tuple(weights)}")
