"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples; the global term order is graded lexicographic
(higher total degree first, then lexicographically larger exponent vector),
which fixes canonical bases, report text, and coefficient indexing everywhere.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .fields import FieldSpec, FieldMismatchError, Scalar

Monomial = Tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial):
    """Sort key putting the graded-lex largest monomial first under reverse=True."""
    return (sum(m), m)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All C(nvars+d-1, d) exponent tuples of total degree d, graded-lex order."""
    if nvars < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        return
    if nvars == 1:
        yield (d,)
        return
    for e in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - e):
            yield (e,) + rest


def monomial_basis(nvars: int, d: int) -> List[Monomial]:
    return list(monomials_of_degree(nvars, d))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial over a FieldSpec; the term map never stores zeros."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FieldSpec, nvars: int, terms: Optional[Dict[Monomial, Scalar]] = None):
        self.field = field
        self.nvars = nvars
        if terms:
            self.terms = {m: c for m, c in terms.items() if c.rep}
        else:
            self.terms = {}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls(field, nvars)

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, value) -> "Polynomial":
        c = field.scalar(value)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls.constant(field, nvars, 1)

    @classmethod
    def variable(cls, field: FieldSpec, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(field, nvars, {exps: field.one})

    @classmethod
    def from_monomial(cls, field: FieldSpec, nvars: int, m: Monomial, coeff=1) -> "Polynomial":
        if len(m) != nvars:
            raise ValueError("monomial length does not match variable count")
        return cls(field, nvars, {tuple(m): field.scalar(coeff)})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.field, self.nvars,
                          {m: c for m, c in self.terms.items() if sum(m) == d})

    def coefficient(self, m: Monomial) -> Scalar:
        return self.terms.get(tuple(m), self.field.zero)

    def sorted_terms(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient_vector(self, basis: Sequence[Monomial]) -> Tuple[Scalar, ...]:
        """Coefficients read off against an explicit monomial basis."""
        return tuple(self.terms.get(m, self.field.zero) for m in basis)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise FieldMismatchError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Scalar)):
            other = Polynomial.constant(self.field, self.nvars, other) \
                if isinstance(other, int) else Polynomial(self.field, self.nvars,
                                                          {(0,) * self.nvars: other})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            acc = out.get(m)
            if acc is None:
                out[m] = c
            else:
                s = acc + c
                if s.rep:
                    out[m] = s
                else:
                    del out[m]
        result = Polynomial(self.field, self.nvars)
        result.terms = out
        return result

    def __neg__(self):
        return Polynomial(self.field, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.field.scalar(other)
        if isinstance(other, Scalar):
            if not other.rep:
                return Polynomial.zero(self.field, self.nvars)
            return Polynomial(self.field, self.nvars,
                              {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        field = self.field
        mul = field.mul_rep
        add = field.add_rep
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            r1 = c1.rep
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = mul(r1, c2.rep)
                acc = out.get(m)
                out[m] = prod if acc is None else add(acc, prod)
        result = Polynomial(field, self.nvars)
        result.terms = {m: Scalar(field, v) for m, v in out.items() if v}
        return result

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset((m, c.rep) for m, c in self.terms.items())))

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        field = self.field
        mul = field.mul_rep
        add = field.add_rep
        reps = [field.scalar(x).rep if not isinstance(x, Scalar) else x.rep for x in point]
        powers: List[Dict[int, object]] = [{0: field.one.rep} for _ in range(self.nvars)]
        acc = field.zero.rep
        for m, c in self.terms.items():
            term = c.rep
            for i, e in enumerate(m):
                if not e:
                    continue
                cache = powers[i]
                pw = cache.get(e)
                if pw is None:
                    pw = field.pow_rep(reps[i], e)
                    cache[e] = pw
                term = mul(term, pw)
            acc = add(acc, term)
        return Scalar(field, acc)

    def compose(self, inner: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute x_i -> inner[i]; all inner polynomials share one target ring."""
        if len(inner) != self.nvars:
            raise ValueError(f"{self.nvars} substitution polynomials required")
        if not inner:
            raise ValueError("cannot compose a polynomial in zero variables")
        target_nvars = inner[0].nvars
        field = self.field
        for g in inner:
            if g.field != field or g.nvars != target_nvars:
                raise FieldMismatchError("substitution polynomials live in different rings")
        out = Polynomial.zero(field, target_nvars)
        power_cache: List[Dict[int, Polynomial]] = [
            {0: Polynomial.one(field, target_nvars)} for _ in range(self.nvars)]
        for m, c in self.terms.items():
            term = Polynomial(field, target_nvars, {(0,) * target_nvars: c})
            for i, e in enumerate(m):
                if not e:
                    continue
                cache = power_cache[i]
                pw = cache.get(e)
                if pw is None:
                    base_e = max(k for k in cache if k <= e)
                    pw = cache[base_e]
                    for _ in range(e - base_e):
                        pw = pw * inner[i]
                        base_e += 1
                        cache[base_e] = pw
                term = term * pw
            out = out + term
        return out

    def substitute_linear(self, matrix) -> "Polynomial":
        """f -> f o A for the linear map with the given square matrix
        (columns are images of basis vectors), i.e. x_i -> sum_j A[i][j] x_j."""
        n = self.nvars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("substitution matrix shape does not match variable count")
        field = self.field
        linear_forms = []
        for i in range(n):
            terms = {}
            for j, entry in enumerate(matrix[i]):
                if entry.rep:
                    exps = tuple(1 if t == j else 0 for t in range(n))
                    terms[exps] = entry
            linear_forms.append(Polynomial(field, n, terms))
        return self.compose(linear_forms)

    def relabel(self, new_index: Sequence[int], new_nvars: int) -> "Polynomial":
        """Rename variable i to new_index[i] inside a ring with new_nvars variables."""
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            exps = [0] * new_nvars
            for i, e in enumerate(m):
                if e:
                    exps[new_index[i]] += e
            out[tuple(exps)] = c
        return Polynomial(self.field, new_nvars, out)

    def map_coefficients(self, func: Callable[[Scalar], Scalar], field: FieldSpec) -> "Polynomial":
        return Polynomial(field, self.nvars, {m: func(c) for m, c in self.terms.items()})

    # -- text ------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical report form: '+'-joined 'c*x1^e1*...*xn^en' terms in
        graded-lex order; extension-field coefficients print as coefficient lists."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [_coeff_text(c)]
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()})"


def _coeff_text(c: Scalar) -> str:
    f = c.field
    if f.p and f.k > 1:
        return "[" + ",".join(str(x) for x in f.coeffs(c)) + "]"
    return str(c.rep)


# ---------------------------------------------------------------------------
# Polarization
# ---------------------------------------------------------------------------

def polarize(f: Polynomial, ncopies: int) -> Dict[Tuple[int, ...], Polynomial]:
    """Multihomogeneous components of f(t1*u1 + ... + tn*un) on n copies.

    Returns {(i1,...,in): component}; components live on U^n with copy-major
    variables (copy i occupies the block i*dim(U)..(i+1)*dim(U)-1).  Each
    component has degree <= deg f; components that vanish in the coefficient
    field are dropped.
    """
    if f.is_zero():
        raise ValueError("polarization of the zero polynomial is undefined")
    if ncopies < 1:
        raise ValueError("need at least one copy")
    nu = f.nvars
    field = f.field
    big_n = ncopies + ncopies * nu  # t variables first, then copy blocks
    inner = []
    for j in range(nu):
        terms = {}
        for i in range(ncopies):
            exps = [0] * big_n
            exps[i] = 1
            exps[ncopies + i * nu + j] = 1
            terms[tuple(exps)] = field.one
        inner.append(Polynomial(field, big_n, terms))
    expanded = f.compose(inner)
    components: Dict[Tuple[int, ...], Dict[Monomial, Scalar]] = {}
    for m, c in expanded.terms.items():
        t_part = m[:ncopies]
        u_part = m[ncopies:]
        components.setdefault(t_part, {})[u_part] = c
    return {idx: Polynomial(field, ncopies * nu, terms)
            for idx, terms in sorted(components.items())}


def elementary_symmetric(field: FieldSpec, nvars: int, r: int) -> Polynomial:
    """The r-th elementary symmetric polynomial in nvars variables."""
    if not 0 <= r <= nvars:
        raise ValueError("elementary symmetric index out of range")
    if r == 0:
        return Polynomial.one(field, nvars)
    terms = {}
    for combo in itertools.combinations(range(nvars), r):
        exps = [0] * nvars
        for i in combo:
            exps[i] = 1
        terms[tuple(exps)] = field.one
    return Polynomial(field, nvars, terms)
