"""Exact dense linear algebra over a FieldSpec.

Matrices are sequences of rows of Scalars at the API boundary; elimination
runs on the raw representations (int codes or Fractions) to keep the hot
loops cheap.  Everything is deterministic: pivots are chosen first-nonzero
in row order, and nullspace bases come from the reduced echelon form.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .fields import FieldSpec, Scalar

Matrix = Tuple[Tuple[Scalar, ...], ...]


class SingularMatrixError(ValueError):
    """Raised when inverting a singular matrix."""


def _to_reps(rows, field: FieldSpec) -> List[list]:
    return [[x.rep for x in row] for row in rows]


def _rref_reps(rows: List[list], field: FieldSpec) -> Tuple[List[list], List[int]]:
    """In-place reduced row echelon form on rep rows; returns (rows, pivot columns)."""
    mul = field.mul_rep
    sub = field.sub_rep
    inv = field.inv_rep
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r]
        scale = inv(piv[c])
        for j in range(c, ncols):
            if piv[j]:
                piv[j] = mul(piv[j], scale)
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                target = rows[i]
                for j in range(c, ncols):
                    if piv[j]:
                        target[j] = sub(target[j], mul(factor, piv[j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(rows: Sequence[Sequence[Scalar]], field: FieldSpec):
    """Reduced row echelon form; returns (rows of Scalars, pivot columns, rank)."""
    reps, pivots = _rref_reps(_to_reps(rows, field), field)
    out = [tuple(Scalar(field, v) for v in row) for row in reps]
    return out, pivots, len(pivots)


def rank(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> int:
    if not rows:
        return 0
    _, pivots = _rref_reps(_to_reps(rows, field), field)
    return len(pivots)


def nullspace(rows: Sequence[Sequence[Scalar]], field: FieldSpec,
              ncols: Optional[int] = None) -> List[Tuple[Scalar, ...]]:
    """Canonical basis of {x : A x = 0}.

    One basis vector per free column, carrying 1 there and the negated pivot
    column entries elsewhere; an empty row list means the full space.
    """
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty row list")
        ncols = len(rows[0])
    if not rows:
        reps: List[list] = []
        pivots: List[int] = []
    else:
        reps, pivots = _rref_reps(_to_reps(rows, field), field)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    zero = field.zero.rep
    one = field.one.rep
    basis = []
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            coeff = reps[r][fc]
            if coeff:
                vec[pc] = field.neg_rep(coeff)
        basis.append(tuple(Scalar(field, v) for v in vec))
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar],
          field: FieldSpec) -> Optional[Tuple[Scalar, ...]]:
    """One solution x of A x = b, or None if inconsistent (canonical: free vars 0)."""
    nrows = len(rows)
    if nrows == 0:
        return None if any(b.rep for b in rhs) else ()
    ncols = len(rows[0])
    aug = [[x.rep for x in row] + [rhs[i].rep] for i, row in enumerate(rows)]
    reps, pivots = _rref_reps(aug, field)
    if ncols in pivots:
        return None
    zero = field.zero.rep
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reps[r][ncols]
    return tuple(Scalar(field, v) for v in x)


def in_span(span_rows: Sequence[Sequence[Scalar]], vec: Sequence[Scalar],
            field: FieldSpec) -> bool:
    """Whether vec lies in the row span of span_rows."""
    if not span_rows:
        return not any(v.rep for v in vec)
    cols = list(zip(*span_rows))
    col_rows = [tuple(col) for col in cols]
    return solve(col_rows, vec, field) is not None


# ---------------------------------------------------------------------------
# Small matrix utilities (group elements are tuples of tuples of Scalars)
# ---------------------------------------------------------------------------

def identity_matrix(field: FieldSpec, n: int) -> Matrix:
    zero, one = field.zero, field.one
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_mul(a: Matrix, b: Matrix, field: FieldSpec) -> Matrix:
    n = len(a)
    m = len(b[0])
    inner = len(b)
    mul = field.mul_rep
    add = field.add_rep
    zero = field.zero.rep
    bt = [[b[i][j].rep for i in range(inner)] for j in range(m)]
    out = []
    for i in range(n):
        arow = [x.rep for x in a[i]]
        row = []
        for j in range(m):
            bcol = bt[j]
            acc = zero
            for t in range(inner):
                if arow[t] and bcol[t]:
                    acc = add(acc, mul(arow[t], bcol[t]))
            row.append(Scalar(field, acc))
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence[Scalar], field: FieldSpec) -> Tuple[Scalar, ...]:
    mul = field.mul_rep
    add = field.add_rep
    zero = field.zero.rep
    reps = [x.rep for x in v]
    out = []
    for row in a:
        acc = zero
        for t, entry in enumerate(row):
            if entry.rep and reps[t]:
                acc = add(acc, mul(entry.rep, reps[t]))
        out.append(Scalar(field, acc))
    return tuple(out)


def mat_inv(a: Matrix, field: FieldSpec) -> Matrix:
    n = len(a)
    ident = identity_matrix(field, n)
    aug = [list(a[i]) + list(ident[i]) for i in range(n)]
    reps, pivots = _rref_reps([[x.rep for x in row] for row in aug], field)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return tuple(tuple(Scalar(field, reps[i][n + j]) for j in range(n)) for i in range(n))


def mat_pow(a: Matrix, n: int, field: FieldSpec) -> Matrix:
    if n < 0:
        return mat_pow(mat_inv(a, field), -n, field)
    result = identity_matrix(field, len(a))
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base, field)
        base = mat_mul(base, base, field)
        n >>= 1
    return result


def mat_map(a: Matrix, func) -> Matrix:
    return tuple(tuple(func(x) for x in row) for row in a)


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return a == b
