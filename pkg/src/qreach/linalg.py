"""Exact subspaces of C^d over Q(i) and scaled-unitary operators.

A ``Subspace`` keeps its basis in reduced row echelon form: pivots are 1,
every pivot column is zero outside its pivot row, columns are scanned left
to right.  Two subspaces are equal iff their basis tuples are identical.

A ``ScaledOperator`` is a pair ``(N, s)`` with ``N^dagger N = s I``.  It
stands for the unitary ``N / sqrt(s)``; spans never see the scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import ONE, ZERO, GaussianRational, format_rational, gr, parse_rational

Vector = tuple  # tuple of GaussianRational
Matrix = tuple  # tuple of row tuples


class DimensionMismatch(ValueError):
    pass


class NotScaledUnitary(ValueError):
    def __init__(self, row: int, col: int, excess: GaussianRational):
        self.row, self.col, self.excess = row, col, excess
        super().__init__(
            f"not scaled-unitary: (N^dagger N - sI)[{row}][{col}] = {excess}"
        )


def vector(entries: Iterable) -> Vector:
    return tuple(gr(x) for x in entries)


def basis_vector(d: int, k: int) -> Vector:
    return tuple(ONE if i == k else ZERO for i in range(d))


def is_zero_vector(v: Sequence) -> bool:
    return not any(v)


def _check_dim(d: int, *vs) -> None:
    for v in vs:
        if len(v) != d:
            raise DimensionMismatch(f"expected length {d}, got {len(v)}")


def rref(rows: Iterable[Sequence], ncols: int) -> tuple:
    """Reduced row echelon form with zero rows dropped."""
    m = [list(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise DimensionMismatch(f"expected length {ncols}, got {len(r)}")
    out_rows = 0
    for c in range(ncols):
        piv = None
        for i in range(out_rows, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        prow = m[out_rows]
        lead = prow[c]
        if lead != 1:
            inv = lead.inverse()
            prow = [x * inv if x else x for x in prow]
            m[out_rows] = prow
        for i in range(len(m)):
            if i == out_rows:
                continue
            f = m[i][c]
            if f:
                row = m[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        out_rows += 1
        if out_rows == len(m):
            break
    return tuple(tuple(r) for r in m[:out_rows])


def _pivots(basis: Sequence[Sequence]) -> list:
    return [next(j for j, x in enumerate(row) if x) for row in basis]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : sum_j row[j] x[j] = 0 for every row} (no conjugation)."""
    red = rref(rows, ncols)
    pivots = _pivots(red)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for r, pc in zip(red, pivots):
            if r[f]:
                x[pc] = -r[f]
        out.append(tuple(x))
    return out


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def sort_key(self):
        return tuple(tuple(x.sort_key() for x in row) for row in self.basis)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Subspace(d={self.ambient_dim}, [{rows}])"


def span(vectors: Iterable[Sequence], ambient_dim: Optional[int] = None) -> Subspace:
    vs = [vector(v) for v in vectors]
    if ambient_dim is None:
        if not vs:
            raise ValueError("ambient dimension needed for an empty spanning set")
        ambient_dim = len(vs[0])
    return Subspace(ambient_dim, rref(vs, ambient_dim))


def zero_space(d: int) -> Subspace:
    return Subspace(d, ())


def full_space(d: int) -> Subspace:
    return Subspace(d, tuple(basis_vector(d, k) for k in range(d)))


def coordinate_space(d: int, indices: Iterable[int]) -> Subspace:
    return span((basis_vector(d, k) for k in sorted(set(indices))), d)


def _same_dim(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_dim(a, b)
    if includes(a, b):
        return a
    if includes(b, a):
        return b
    return Subspace(a.ambient_dim, rref(a.basis + b.basis, a.ambient_dim))


def annihilator(a: Subspace) -> Subspace:
    """{y : sum_k y_k x_k = 0 for all x in a} under the bilinear pairing."""
    return Subspace(a.ambient_dim, rref(nullspace(a.basis, a.ambient_dim), a.ambient_dim))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_dim(a, b)
    if includes(a, b):
        return b
    if includes(b, a):
        return a
    d = a.ambient_dim
    stacked = annihilator(a).basis + annihilator(b).basis
    return Subspace(d, rref(nullspace(stacked, d), d))


def reduce_vector(a: Subspace, v: Sequence) -> list:
    """Residual of ``v`` after eliminating the pivot columns of ``a``."""
    r = list(v)
    for row in a.basis:
        c = next(j for j, x in enumerate(row) if x)
        f = r[c]
        if f:
            for j in range(c, len(row)):
                if row[j]:
                    r[j] = r[j] - f * row[j]
    return r


def contains(a: Subspace, v: Sequence) -> bool:
    _check_dim(a.ambient_dim, v)
    if a.is_full():
        return True
    if a.is_zero():
        return not any(v)
    return not any(reduce_vector(a, v))


def includes(a: Subspace, b: Subspace) -> bool:
    """True iff ``b`` is a subspace of ``a``."""
    _same_dim(a, b)
    if b.dim > a.dim:
        return False
    if a.is_full() or b.is_zero():
        return True
    return all(not any(reduce_vector(a, row)) for row in b.basis)


# operators


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    out = []
    for row in m:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return tuple(out)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = len(b[0]) if b else 0
    out = []
    for ai in a:
        row = [ZERO] * cols
        for t, x in enumerate(ai):
            if not x:
                continue
            for j, y in enumerate(b[t]):
                if y:
                    row[j] = row[j] + x * y
        out.append(tuple(row))
    return tuple(out)


def adjoint(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    cols = len(m[0]) if n else 0
    return tuple(tuple(m[i][j].conj() for i in range(n)) for j in range(cols))


def kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    out = []
    for ar in a:
        for br in b:
            out.append(tuple(x * y for x in ar for y in br))
    return tuple(out)


def identity_matrix(d: int) -> Matrix:
    return tuple(basis_vector(d, k) for k in range(d))


@dataclass(frozen=True)
class ScaledOperator:
    """Unitary ``matrix / sqrt(scale)`` with ``matrix^dagger matrix = scale I``.

    Construct through ``validate_scaled_unitary`` unless the invariant is
    already known to hold.
    """

    matrix: Matrix
    scale: Fraction

    @property
    def ambient_dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence) -> Vector:
        _check_dim(self.ambient_dim, v)
        return matvec(self.matrix, v)

    def dagger(self) -> "ScaledOperator":
        return ScaledOperator(adjoint(self.matrix), self.scale)

    def compose(self, other: "ScaledOperator") -> "ScaledOperator":
        """``self`` after ``other``."""
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("operator dimensions differ")
        return ScaledOperator(matmul(self.matrix, other.matrix), self.scale * other.scale)

    def power(self, k: int) -> "ScaledOperator":
        if k < 0:
            raise ValueError("negative powers: use dagger()")
        result = identity(self.ambient_dim)
        base = self
        while k:
            if k & 1:
                result = base.compose(result)
            base = base.compose(base)
            k >>= 1
        return result

    def to_json(self) -> dict:
        return {
            "scale": format_rational(self.scale),
            "matrix": [[x.to_json() for x in row] for row in self.matrix],
        }

    def __repr__(self):
        return f"ScaledOperator(d={self.ambient_dim}, scale={format_rational(self.scale)})"


def identity(d: int) -> ScaledOperator:
    return ScaledOperator(identity_matrix(d), Fraction(1))


def validate_scaled_unitary(matrix: Iterable[Iterable], scale=1) -> ScaledOperator:
    m = tuple(tuple(gr(x) for x in row) for row in matrix)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise DimensionMismatch("operator matrix must be square and nonempty")
    s = scale if isinstance(scale, Fraction) else parse_rational(scale)
    if s <= 0:
        raise ValueError("scale must be a positive rational")
    gram = matmul(adjoint(m), m)
    for i in range(n):
        for j in range(n):
            excess = gram[i][j] - (s if i == j else 0)
            if excess:
                raise NotScaledUnitary(i, j, excess)
    return ScaledOperator(m, s)


def image(t: ScaledOperator, a: Subspace) -> Subspace:
    if t.ambient_dim != a.ambient_dim:
        raise DimensionMismatch("operator and subspace dimensions differ")
    if a.is_zero() or a.is_full():
        return a
    return Subspace(a.ambient_dim, rref((matvec(t.matrix, row) for row in a.basis), a.ambient_dim))


def preimage(t: ScaledOperator, a: Subspace) -> Subspace:
    # U^{-1} = U^dagger; the scale does not change a span
    return image(t.dagger(), a)
