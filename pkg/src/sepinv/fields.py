"""Exact scalar arithmetic over prime fields F_p, small extensions F_{p^k}, and Q.

Extension fields are realised as F_p[t]/(modulus) with a deterministically
chosen irreducible modulus, so element encodings are reproducible across runs.
Elements of finite fields are stored as integer codes c0 + c1*p + ... reading
off the coefficient vector of the residue class; rationals are stored as
`fractions.Fraction`.  All scalars are immutable values.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

# q*q lookup tables are only built below this size; larger extensions fall
# back to per-operation polynomial arithmetic.
_TABLE_LIMIT = 1024


class FieldMismatchError(ValueError):
    """Raised when combining scalars that live in different fields."""


class FieldConstructionError(ValueError):
    """Raised for invalid field parameters (non-prime p, reducible modulus, ...)."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Dense univariate polynomial helpers over F_p (coefficient tuples, low first)
# ---------------------------------------------------------------------------

def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> Tuple[int, ...]:
    # m must be monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _trim(a)


def _poly_divides(d: Sequence[int], a: Sequence[int], p: int) -> bool:
    inv_lead = pow(d[-1], p - 2, p)
    monic = tuple((c * inv_lead) % p for c in d)
    return not _poly_mod(a, monic, p)


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Brute-force trial division; adequate for the small moduli used here."""
    k = len(poly) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tuple(tail) + (1,)
            if _poly_divides(divisor, poly, p):
                return False
    return True


def default_modulus(p: int, k: int) -> Tuple[int, ...]:
    """First monic irreducible of degree k over F_p, in lexicographic order
    of the coefficient vector (c0, ..., c_{k-1})."""
    for tail in itertools.product(range(p), repeat=k):
        candidate = tuple(tail) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise FieldConstructionError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# FieldSpec
# ---------------------------------------------------------------------------

class FieldSpec:
    """Descriptor of F_p (k=1), F_{p^k} with an explicit modulus, or Q (p=0).

    Instances are interned: use the module-level constructors `GF` and the
    `QQ` singleton.  Finite-field element codes are integers in [0, q);
    rational scalars carry a `Fraction`.
    """

    _cache: dict = {}

    def __init__(self, p: int, k: int, modulus: Optional[Tuple[int, ...]]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k if p else 0
        self._key = (p, k, modulus)
        self._mul_table: Optional[list] = None
        self._inv_table: Optional[list] = None
        self._elements: Optional[list] = None
        self.zero = Scalar(self, Fraction(0) if p == 0 else 0)
        self.one = Scalar(self, Fraction(1) if p == 0 else 1)

    # -- construction ------------------------------------------------------

    @staticmethod
    def get(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> "FieldSpec":
        if p == 0:
            if k != 1 or modulus is not None:
                raise FieldConstructionError("rationals take k=1 and no modulus")
            key = (0, 1, None)
        else:
            if not is_prime(p):
                raise FieldConstructionError(f"characteristic {p} is not prime")
            if k < 1:
                raise FieldConstructionError("extension degree must be >= 1")
            if k == 1:
                if modulus is not None:
                    raise FieldConstructionError("prime fields take no modulus")
                key = (p, 1, None)
            else:
                if modulus is None:
                    mod = default_modulus(p, k)
                else:
                    mod = tuple(c % p for c in modulus)
                    if len(mod) != k + 1 or mod[-1] != 1:
                        raise FieldConstructionError(
                            f"modulus must be monic of degree {k} (low-to-high coefficients)")
                    if not _is_irreducible(mod, p):
                        raise FieldConstructionError(f"modulus {list(mod)} is reducible over F_{p}")
                key = (p, k, mod)
        spec = FieldSpec._cache.get(key)
        if spec is None:
            spec = FieldSpec(*key)
            FieldSpec._cache[key] = spec
        return spec

    # -- basic properties ----------------------------------------------------

    @property
    def is_rationals(self) -> bool:
        return self.p == 0

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldSpec) and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.p == 0:
            return "QQ"
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.q})"

    # -- scalar factories ----------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction, or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field == self:
                return value
            raise FieldMismatchError(f"scalar of {value.field} given to {self}")
        if self.p == 0:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError("denominator vanishes in this characteristic")
            num = value.numerator % self.p
            den = pow(value.denominator % self.p, self.p - 2, self.p)
            return Scalar(self, (num * den) % self.p)
        return Scalar(self, int(value) % self.p)

    def from_coeffs(self, coeffs: Sequence[int]) -> "Scalar":
        """Element with the given coefficient vector (low-to-high powers of t)."""
        if self.p == 0:
            raise FieldConstructionError("coefficient vectors only describe finite-field elements")
        if len(coeffs) > self.k:
            raise FieldConstructionError(f"coefficient vector longer than degree {self.k}")
        code = 0
        for c in reversed([c % self.p for c in coeffs]):
            code = code * self.p + c
        return Scalar(self, code)

    def coeffs(self, a: "Scalar") -> Tuple[int, ...]:
        code = a.rep
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    @property
    def gen(self) -> "Scalar":
        """The residue of t in F_{p^k}; equals 1 when k == 1."""
        if self.p == 0:
            raise FieldConstructionError("rationals have no distinguished generator")
        return Scalar(self, self.p if self.k > 1 else 1)

    def elements(self) -> list:
        """All q field elements in ascending code order (F_4: 0, 1, t, t+1)."""
        if self.p == 0:
            raise FieldConstructionError("cannot enumerate an infinite field")
        if self._elements is None:
            self._elements = [Scalar(self, code) for code in range(self.q)]
        return list(self._elements)

    # -- arithmetic on raw representations ------------------------------------

    def add_rep(self, a, b):
        if self.p == 0:
            return a + b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_rep(self, a):
        if self.p == 0:
            return -a
        if self.k == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        mult = 1
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def sub_rep(self, a, b):
        return self.add_rep(a, self.neg_rep(b)) if self.p else a - b

    def mul_rep(self, a, b):
        if self.p == 0:
            return a * b
        if self.k == 1:
            return (a * b) % self.p
        if self.q <= _TABLE_LIMIT:
            if self._mul_table is None:
                self._build_tables()
            return self._mul_table[a * self.q + b]
        return self._mul_slow(a, b)

    def inv_rep(self, a):
        if self.p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= _TABLE_LIMIT:
            if self._inv_table is None:
                self._build_tables()
            return self._inv_table[a]
        # a^(q-2) by square-and-multiply
        return self.pow_rep(a, self.q - 2)

    def pow_rep(self, a, n: int):
        if n < 0:
            return self.pow_rep(self.inv_rep(a), -n)
        result = Fraction(1) if self.p == 0 else 1
        base = a
        while n:
            if n & 1:
                result = self.mul_rep(result, base)
            base = self.mul_rep(base, base)
            n >>= 1
        return result

    def _decode(self, code: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return _trim(out)

    def _encode(self, coeffs: Sequence[int]) -> int:
        code = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            code = code * self.p + c % self.p
        return code

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _poly_mul(self._decode(a), self._decode(b), self.p)
        return self._encode(_poly_mod(prod, self.modulus, self.p))

    def _build_tables(self):
        q = self.q
        mul = [0] * (q * q)
        for a in range(q):
            row = a * q
            for b in range(a, q):
                v = self._mul_slow(a, b)
                mul[row + b] = v
                mul[b * q + a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        self._mul_table = mul
        self._inv_table = inv


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

class Scalar:
    """Immutable field element; arithmetic dispatches through the owning field."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldSpec, rep):
        self.field = field
        self.rep = rep

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatchError(f"cannot combine {self.field} and {other.field} scalars")
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add_rep(self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub_rep(self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub_rep(o.rep, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul_rep(self.rep, o.rep))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg_rep(self.rep))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul_rep(self.rep, self.field.inv_rep(o.rep)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul_rep(o.rep, self.field.inv_rep(self.rep)))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv_rep(self.rep))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow_rep(self.rep, n))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key, self.rep))

    def __bool__(self):
        return bool(self.rep)

    def frobenius(self, n: int = 1) -> "Scalar":
        """a -> a^(p^n); defined only in positive characteristic."""
        if self.field.p == 0:
            raise FieldConstructionError("frobenius is undefined in characteristic zero")
        if n < 0:
            raise ValueError("frobenius exponent must be nonnegative")
        return self ** (self.field.p ** n)

    def multiplicative_order(self) -> int:
        if not self.rep:
            raise ZeroDivisionError("zero has no multiplicative order")
        acc = self
        n = 1
        while acc != self.field.one:
            acc = acc * self
            n += 1
            if self.field.p and n > self.field.q:
                raise RuntimeError("order search exceeded field size")
        return n

    def __repr__(self):
        return self.__str__()

    def __str__(self):
        f = self.field
        if f.p == 0:
            return str(self.rep)
        if f.k == 1:
            return str(self.rep)
        coeffs = f.coeffs(self)
        terms = []
        for i in range(f.k - 1, -1, -1):
            c = coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "t" if i == 1 else f"t^{i}"
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"


def GF(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """The finite field with p^k elements (explicit or default modulus)."""
    if p == 0:
        raise FieldConstructionError("use QQ for the rationals")
    return FieldSpec.get(p, k, modulus)


QQ = FieldSpec.get(0)


# ---------------------------------------------------------------------------
# Module-level operations used throughout the toolkit
# ---------------------------------------------------------------------------

def frobenius(a: Scalar, n: int) -> Scalar:
    return a.frobenius(n)


def enumerate_elements(field: FieldSpec) -> list:
    """All p^k elements in deterministic (ascending code) order."""
    return field.elements()


def root_of_unity(field: FieldSpec, r: int) -> Scalar:
    """First field element (in enumeration order) of multiplicative order exactly r.

    Requires gcd(r, p) = 1 and r | p^k - 1; otherwise no primitive r-th root
    exists in the field and the caller must enlarge the extension degree.
    """
    if r < 1:
        raise ValueError("order must be positive")
    if field.p == 0:
        if r == 1:
            return field.one
        if r == 2:
            return field.scalar(-1)
        raise FieldConstructionError(f"no primitive {r}th root of unity in Q")
    if gcd(r, field.p) != 1:
        raise FieldConstructionError(f"{r} is not coprime to the characteristic {field.p}")
    if (field.q - 1) % r != 0:
        raise FieldConstructionError(
            f"{field!r} has no primitive {r}th root of unity; enlarge the extension degree")
    if r == 1:
        return field.one
    for a in field.elements()[1:]:
        if a.multiplicative_order() == r:
            return a
    raise FieldConstructionError(f"no element of order {r} found in {field!r}")


def embed(a: Scalar, target: FieldSpec) -> Scalar:
    """Canonical embedding of a into an extension of its field.

    Prime-subfield elements embed as constants; for a proper source extension
    the image of t is the first root of the source modulus in the target
    (ascending code order), which yields a field homomorphism.
    """
    src = a.field
    if src == target:
        return a
    if src.p != target.p:
        raise FieldMismatchError(f"no embedding of {src} into {target}")
    if src.p == 0:
        return a
    if target.k % src.k != 0:
        raise FieldMismatchError(f"{src} is not a subfield of {target}")
    if src.k == 1:
        return Scalar(target, a.rep)
    image = _subfield_generator_image(src, target)
    coeffs = src.coeffs(a)
    acc = target.zero
    for c in reversed(coeffs):
        acc = acc * image + target.scalar(c)
    return acc


_EMBED_CACHE: dict = {}


def _subfield_generator_image(src: FieldSpec, target: FieldSpec) -> Scalar:
    key = (src._key, target._key)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    for cand in target.elements():
        acc = target.zero
        for c in reversed(src.modulus):
            acc = acc * cand + target.scalar(c)
        if not acc:
            _EMBED_CACHE[key] = cand
            return cand
    raise FieldMismatchError(f"modulus of {src} has no root in {target}")
