"""Exact dense linear algebra over the rationals.

Everything here is computed with `fractions.Fraction`; there is no floating
point anywhere.  The elimination kernel is fraction-free (Bareiss): rows are
scaled to integers once, elimination stays in integer arithmetic with exact
one-step divisions, and only the final back-substitution returns to
fractions.  This keeps intermediate entries at minor-determinant size
instead of letting numerators and denominators compound.

Affine subspaces are kept in a canonical form (reduced-echelon direction
basis, particular point zeroed on the basis pivot coordinates) so that two
subspaces are equal as point sets exactly when their stored fields are
identical.  Set equality therefore reduces to tuple comparison, which is
what stabilization detection in the solver relies on.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple[Fraction, ...]


def _as_fraction_vector(values: Iterable) -> Vector:
    return tuple(Fraction(x) for x in values)


def _integer_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale a rational row by the lcm of its denominators; return (row, scale)."""
    scale = 1
    for x in row:
        d = x.denominator
        scale = scale * d // math.gcd(scale, d)
    return [x.numerator * (scale // x.denominator) for x in row], scale


class RationalMatrix:
    """Immutable dense matrix with Fraction entries, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]) -> None:
        rows = tuple(_as_fraction_vector(r) for r in entries)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.cols:
                raise DimensionMismatch("ragged rows in matrix")
        self.entries = rows

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls([[zero] * cols for _ in range(rows)])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def mul_vec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(
                f"matrix is {self.rows}x{self.cols}, vector has length {len(v)}"
            )
        zero = Fraction(0)
        return tuple(sum((a * b for a, b in zip(row, v)), zero) for row in self.entries)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = Fraction(0)
        cols = list(zip(*other.entries)) if other.cols else []
        return RationalMatrix(
            [[sum((a * b for a, b in zip(row, col)), zero) for col in cols] for row in self.entries]
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


def _bareiss_forward(m: list[list[int]], pivot_cols_limit: int) -> tuple[list[int], int]:
    """Fraction-free forward elimination, in place.

    Pivots are searched in columns ``0..pivot_cols_limit-1`` only; trailing
    columns (right-hand sides) are updated but never pivoted on.  Returns the
    pivot column list and the sign accumulated from row swaps.  Every
    division is exact: entries after step t are (t+1)x(t+1) minors of the
    original matrix, and the previous pivot divides the two-term update.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    sign = 1
    prev = 1
    r = 0
    for c in range(pivot_cols_limit):
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nrows):
            row_i = m[i]
            mic = row_i[c]
            if mic:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
                row_i[c] = 0
            elif prev != piv:
                for j in range(c + 1, ncols):
                    row_i[j] = piv * row_i[j] // prev
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, sign


def determinant(a: RationalMatrix) -> Fraction:
    """Exact determinant via fraction-free elimination."""
    if a.rows != a.cols:
        raise DimensionMismatch(f"determinant of non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return Fraction(1)
    m: list[list[int]] = []
    denom = 1
    for i in range(n):
        ints, scale = _integer_row(a.row(i))
        m.append(ints)
        denom *= scale
    pivots, sign = _bareiss_forward(m, n)
    if len(pivots) < n:
        return Fraction(0)
    # after full elimination the last pivot is the integer determinant
    return Fraction(sign * m[n - 1][n - 1], denom)


def _rref_rows(vectors: Iterable[Sequence[Fraction]], ambient: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a list of vectors; returns (rows, pivot columns)."""
    rows = [list(v) for v in vectors if any(v)]
    pivots: list[int] = []
    r = 0
    for c in range(ambient):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                coef = rows[i][c]
                rows[i] = [a - coef * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class AffineSubspace:
    """An affine subset of Q^ambient in canonical form.

    The direction space is stored as the reduced row echelon basis of
    whatever spanning set was supplied, and the particular point is the
    unique member of the set whose coordinates vanish on the basis pivot
    columns.  Both are derived from the point set alone, so equal sets
    always produce field-identical objects.  The empty set is representable.
    """

    __slots__ = ("ambient_dim", "particular", "basis", "pivot_cols", "is_empty")

    def __init__(
        self,
        ambient_dim: int,
        particular: Sequence[Fraction] | None = None,
        span: Iterable[Sequence[Fraction]] = (),
        *,
        empty: bool = False,
    ) -> None:
        self.ambient_dim = ambient_dim
        if empty:
            self.particular: Vector = ()
            self.basis: tuple[Vector, ...] = ()
            self.pivot_cols: tuple[int, ...] = ()
            self.is_empty = True
            return
        if particular is None:
            particular = (Fraction(0),) * ambient_dim
        point = _as_fraction_vector(particular)
        if len(point) != ambient_dim:
            raise DimensionMismatch("particular point has wrong length")
        span = [_as_fraction_vector(v) for v in span]
        for v in span:
            if len(v) != ambient_dim:
                raise DimensionMismatch("spanning vector has wrong length")
        rows, pivots = _rref_rows(span, ambient_dim)
        reduced = list(point)
        for row, c in zip(rows, pivots):
            coef = reduced[c]
            if coef:
                reduced = [a - coef * b for a, b in zip(reduced, row)]
        self.particular = tuple(reduced)
        self.basis = tuple(tuple(r) for r in rows)
        self.pivot_cols = tuple(pivots)
        self.is_empty = False

    @classmethod
    def empty(cls, ambient_dim: int) -> "AffineSubspace":
        return cls(ambient_dim, empty=True)

    @classmethod
    def from_point(cls, point: Sequence[Fraction]) -> "AffineSubspace":
        return cls(len(point), point)

    @classmethod
    def full(cls, ambient_dim: int) -> "AffineSubspace":
        return cls(ambient_dim, span=RationalMatrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int | None:
        """Affine dimension, or None for the empty set."""
        return None if self.is_empty else len(self.basis)

    def contains(self, point: Sequence[Fraction]) -> bool:
        if len(point) != self.ambient_dim:
            raise DimensionMismatch("membership test with wrong vector length")
        if self.is_empty:
            return False
        v = [Fraction(x) - p for x, p in zip(point, self.particular)]
        return self._direction_residual_zero(v)

    def contains_direction(self, vector: Sequence[Fraction]) -> bool:
        """Whether a vector lies in the direction space of this subspace."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch("direction test with wrong vector length")
        if self.is_empty:
            return False
        return self._direction_residual_zero([Fraction(x) for x in vector])

    def _direction_residual_zero(self, v: list[Fraction]) -> bool:
        for row, c in zip(self.basis, self.pivot_cols):
            coef = v[c]
            if coef:
                v = [a - coef * b for a, b in zip(v, row)]
        return not any(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineSubspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.is_empty == other.is_empty
            and self.particular == other.particular
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.is_empty, self.particular, self.basis))

    def __repr__(self) -> str:
        if self.is_empty:
            return f"AffineSubspace(empty in Q^{self.ambient_dim})"
        return f"AffineSubspace(dim {len(self.basis)} in Q^{self.ambient_dim})"


def solve_exact(a: RationalMatrix, b: Sequence[Fraction]) -> AffineSubspace:
    """Full solution set of ``a x = b`` as a canonical affine subspace.

    Fraction-free forward elimination on the integer-scaled augmented
    matrix, then exact back-substitution.  The result may be a single
    point, a positive-dimensional affine set, or empty.
    """
    if a.rows != len(b):
        raise DimensionMismatch(
            f"matrix has {a.rows} rows but right-hand side has length {len(b)}"
        )
    ncols = a.cols
    aug: list[list[int]] = []
    for i in range(a.rows):
        ints, _ = _integer_row(list(a.row(i)) + [Fraction(b[i])])
        aug.append(ints)
    pivots, _ = _bareiss_forward(aug, ncols)
    rank = len(pivots)
    for i in range(rank, len(aug)):
        if aug[i][ncols] != 0:
            return AffineSubspace.empty(ncols)
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    # back-substitute the echelon rows into reduced form; only free columns
    # and the right-hand side are needed (pivot columns reduce to identity)
    wanted = free_cols + [ncols]
    reduced: list[dict[int, Fraction]] = [dict() for _ in range(rank)]
    for i in reversed(range(rank)):
        piv = aug[i][pivots[i]]
        row = aug[i]
        for j in wanted:
            if j < pivots[i]:
                continue
            s = Fraction(row[j])
            for k in range(i + 1, rank):
                coef = row[pivots[k]]
                if coef:
                    s -= coef * reduced[k].get(j, Fraction(0))
            reduced[i][j] = s / piv
    zero = Fraction(0)
    particular = [zero] * ncols
    for i, c in enumerate(pivots):
        particular[c] = reduced[i].get(ncols, zero)
    span = []
    for f in free_cols:
        v = [zero] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            coef = reduced[i].get(f, zero)
            if coef:
                v[c] = -coef
        span.append(v)
    return AffineSubspace(ncols, particular, span)


def image_under_map(s: AffineSubspace, m: RationalMatrix) -> AffineSubspace:
    """Image of an affine subspace under a linear map, re-canonicalized."""
    if m.cols != s.ambient_dim:
        raise DimensionMismatch(
            f"map expects dimension {m.cols}, subspace lives in {s.ambient_dim}"
        )
    if s.is_empty:
        return AffineSubspace.empty(m.rows)
    return AffineSubspace(
        m.rows,
        m.mul_vec(s.particular),
        [m.mul_vec(v) for v in s.basis],
    )


def subspace_equal(s1: AffineSubspace, s2: AffineSubspace) -> bool:
    """Point-set equality, decided by comparing canonical forms."""
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(
            f"comparing subspaces of Q^{s1.ambient_dim} and Q^{s2.ambient_dim}"
        )
    return s1 == s2


def subspace_dim(s: AffineSubspace) -> int | None:
    """Affine dimension; None for the empty set."""
    return s.dim


def affine_subset(inner: AffineSubspace, outer: AffineSubspace) -> bool:
    """Whether ``inner`` is contained in ``outer``, checked on generators."""
    if inner.ambient_dim != outer.ambient_dim:
        raise DimensionMismatch(
            f"comparing subspaces of Q^{inner.ambient_dim} and Q^{outer.ambient_dim}"
        )
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    if not outer.contains(inner.particular):
        return False
    return all(outer.contains_direction(v) for v in inner.basis)
