"""Exact dense linear algebra over arbitrary-precision rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator), vectors are tuples of Fractions, and matrices are immutable
dense grids.  Products go through an integer-scaled fast path: both operands
are lifted to integer grids (one common denominator per matrix), multiplied
with native ints, and the results rebuilt as canonical Fractions.  Everything
is exact; there is no tolerance anywhere.

Besides products the module provides incremental column-echelon spaces with
pivot bookkeeping (:class:`ColumnSpace`) and the simultaneous two-matrix
reduction used by the elimination engine, where reduction coefficients
computed against one matrix are replayed on a paired matrix.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionError, ParseError

Vec = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like ``-3/4``, and Fractions to Fraction."""
    return x if type(x) is Fraction else Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(frac(x) for x in entries)


def zero_vec(n: int) -> Vec:
    return (_ZERO,) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(a: Sequence[Fraction], c: Fraction) -> Vec:
    return tuple(x * c for x in a)


class RatMatrix:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("rows", "cols", "_data", "_int_cache")

    def __init__(self, data: Sequence[Sequence]):
        rows = tuple(tuple(frac(x) for x in row) for row in data)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise DimensionError("ragged rows")
        else:
            w = 0
        self._data = rows
        self.rows = len(rows)
        self.cols = w
        self._int_cache = None

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int | None = None) -> "RatMatrix":
        cols = [tuple(c) for c in columns]
        if not cols:
            return cls.zero(rows or 0, 0)
        return cls(list(zip(*cols)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vec:
        return self._data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vec]:
        return [tuple(c) for c in zip(*self._data)] if self.rows else []

    def is_zero(self) -> bool:
        return all(not x for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in add")
        return RatMatrix([vec_add(r, s) for r, s in zip(self._data, other._data)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in sub")
        return RatMatrix([vec_sub(r, s) for r, s in zip(self._data, other._data)])

    def scale(self, c) -> "RatMatrix":
        c = frac(c)
        return RatMatrix([vec_scale(r, c) for r in self._data])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            return mat_mul(self, other)
        return NotImplemented

    # Integer lift: (denominator, rows of plain ints), cached since matrices
    # are immutable and products reuse the same operand many times.
    def _int_form(self):
        if self._int_cache is None:
            den = 1
            for r in self._data:
                for x in r:
                    if x.denominator != 1:
                        den = lcm(den, x.denominator)
            if den == 1:
                irows = [tuple(x.numerator for x in r) for r in self._data]
            else:
                irows = [
                    tuple(x.numerator * (den // x.denominator) for x in r)
                    for r in self._data
                ]
            self._int_cache = (den, irows)
        return self._int_cache


def mat_mul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    da, arows = a._int_form()
    db, brows = b._int_form()
    bcols = list(zip(*brows)) if brows else []
    den = da * db
    out = [
        [Fraction(sum(x * y for x, y in zip(arow, bcol)), den) for bcol in bcols]
        for arow in arows
    ]
    if not out:
        return RatMatrix.zero(a.rows, b.cols)
    return RatMatrix(out)


def mat_vec(a: RatMatrix, v: Sequence[Fraction]) -> Vec:
    """Exact matrix-vector product."""
    if a.cols != len(v):
        raise DimensionError(f"cannot apply {a.rows}x{a.cols} to length-{len(v)} vector")
    da, arows = a._int_form()
    dv = 1
    for x in v:
        if x.denominator != 1:
            dv = lcm(dv, x.denominator)
    iv = [x.numerator if dv == 1 else x.numerator * (dv // x.denominator) for x in v]
    den = da * dv
    return tuple(Fraction(sum(x * y for x, y in zip(arow, iv)), den) for arow in arows)


def mat_pow(a: RatMatrix, k: int, stop_at_zero: bool = False) -> RatMatrix:
    """a**k by square-and-multiply; optionally short-circuits once a power
    is exactly zero (then every higher power is zero too)."""
    if not a.is_square():
        raise DimensionError("power of a non-square matrix")
    if k < 0:
        raise ValueError("negative power")
    result = RatMatrix.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
            if stop_at_zero and result.is_zero():
                return RatMatrix.zero(a.rows, a.cols)
        k >>= 1
        if k:
            base = mat_mul(base, base)
            # the top bit of k is always set, so a zero base zeroes the product
            if stop_at_zero and base.is_zero():
                return RatMatrix.zero(a.rows, a.cols)
    return result


class ColumnSpace:
    """A subspace of K^rows kept in reduced column-echelon form.

    Invariants: pivot rows are pairwise distinct; each basis column is 1 at
    its own pivot row and 0 at every other column's pivot row.  Reduction
    coefficients against such a basis can therefore be read off directly at
    the pivot rows, independent of order.
    """

    __slots__ = ("rows", "basis", "pivot_rows")

    def __init__(self, rows: int):
        self.rows = rows
        self.basis: list[list[Fraction]] = []
        self.pivot_rows: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        residual, _ = self.reduce(v)
        return vec_is_zero(residual)

    def reduce(self, v: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
        """Return (residual, coefficients) with
        residual = v - sum(coefficients[i] * basis[i]); the residual is zero
        at every pivot row, and is the zero vector iff v lies in the span."""
        if len(v) != self.rows:
            raise DimensionError(f"vector length {len(v)} != {self.rows}")
        # coerce now: int entries would turn exact into float at 1/pivot
        residual = [frac(x) for x in v]
        coeffs = [residual[p] for p in self.pivot_rows]
        for c, b in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        residual[i] -= c * x
        return residual, coeffs

    def insert(self, v: Sequence[Fraction]) -> bool:
        """Adjoin v if independent, restoring the echelon invariants.
        Returns True iff the dimension grew."""
        return self.insert_paired(v, ())

    def insert_paired(
        self,
        v: Sequence[Fraction],
        mirrors: Sequence[tuple[list, Sequence[Fraction]]],
    ) -> bool:
        """Insert v while replaying every column operation on paired columns.

        ``mirrors`` is a sequence of (columns, new_column) pairs where
        ``columns`` is a list aligned index-by-index with this space's basis.
        On acceptance each paired list receives the same reduction,
        normalization and re-reduction applied here, and the transformed
        new_column is appended to it; on rejection nothing is touched.
        """
        residual, coeffs = self.reduce(v)
        pivot = next((i for i, x in enumerate(residual) if x), -1)
        if pivot < 0:
            return False
        mirrored = []
        for columns, new_col in mirrors:
            if len(columns) != len(self.basis):
                raise DimensionError("mirror list not aligned with basis")
            m = [frac(x) for x in new_col]
            for c, b in zip(coeffs, columns):
                if c:
                    for i, x in enumerate(b):
                        if x:
                            m[i] -= c * x
            mirrored.append(m)
        inv = 1 / residual[pivot]
        if inv != 1:
            residual = [x * inv for x in residual]
            mirrored = [[x * inv for x in m] for m in mirrored]
        # zero out the new pivot row in the existing basis columns
        for j, b in enumerate(self.basis):
            c = b[pivot]
            if c:
                for i, x in enumerate(residual):
                    if x:
                        b[i] -= c * x
                for (columns, _), m in zip(mirrors, mirrored):
                    col = columns[j]
                    for i, x in enumerate(m):
                        if x:
                            col[i] -= c * x
        self.basis.append(residual)
        self.pivot_rows.append(pivot)
        for (columns, _), m in zip(mirrors, mirrored):
            columns.append(m)
        return True


def reduce_against(space: ColumnSpace, v: Sequence[Fraction]) -> tuple[Vec, Vec]:
    residual, coeffs = space.reduce(v)
    return tuple(residual), tuple(coeffs)


def insert(space: ColumnSpace, v: Sequence[Fraction]) -> bool:
    return space.insert(v)


def simultaneous_reduce(
    w_space: ColumnSpace,
    paired: Sequence[Sequence[Fraction]],
    v_prime: Sequence[Fraction],
    v: Sequence[Fraction],
) -> tuple[Vec, Vec]:
    """Reduce v_prime against w_space and replay the same coefficients on v
    using the paired columns.

    If paired[i] maps to w_space.basis[i] under some linear map T (for the
    elimination engine: multiplication by f(A)^(l-1)), then the returned
    residuals satisfy r_prime = T(r).
    """
    if len(paired) != w_space.dim:
        raise DimensionError(
            f"paired column count {len(paired)} != space dimension {w_space.dim}"
        )
    residual, coeffs = w_space.reduce(v_prime)
    r = list(v)
    for c, s in zip(coeffs, paired):
        if c:
            for i, x in enumerate(s):
                if x:
                    r[i] -= c * x
    return tuple(residual), tuple(r)


def column_reduce_matrix(m: RatMatrix) -> RatMatrix:
    """Reduced column-echelon form of m with zero columns dropped; the output
    spans the same column space and has rank-many columns."""
    space = ColumnSpace(m.rows)
    for c in m.columns():
        space.insert(c)
    return RatMatrix.from_columns([tuple(b) for b in space.basis], rows=m.rows)


def rank(m: RatMatrix) -> int:
    """Exact rank over the rationals."""
    space = ColumnSpace(m.rows)
    return sum(space.insert(c) for c in m.columns())


def format_rational(x: Fraction) -> str:
    return str(x)


def format_matrix(m: RatMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(str(x) for x in m.row(i)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RatMatrix:
    """Parse the matrix text format: a header line ``n m`` and n rows of m
    whitespace-separated rationals (``p``, ``-p`` or ``p/q``)."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise ParseError(1, 1, "empty matrix file")
    header = lines[idx].split()
    if len(header) != 2:
        raise ParseError(idx + 1, 1, "expected header 'rows cols'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(idx + 1, 1, "header entries must be integers") from None
    if n < 0 or m < 0:
        raise ParseError(idx + 1, 1, "dimensions must be non-negative")
    data = []
    row_line = idx
    for i in range(n):
        row_line += 1
        while row_line < len(lines) and not lines[row_line].strip():
            row_line += 1
        if row_line >= len(lines):
            raise ParseError(len(lines) + 1, 1, f"expected {n} rows, found {i}")
        tokens = lines[row_line].split()
        if len(tokens) != m:
            raise ParseError(row_line + 1, 1, f"expected {m} entries, found {len(tokens)}")
        row = []
        for j, tok in enumerate(tokens):
            try:
                x = Fraction(tok)
            except (ValueError, ZeroDivisionError):
                raise ParseError(row_line + 1, j + 1, f"bad rational {tok!r}") from None
            row.append(x)
        data.append(row)
    return RatMatrix(data)


def parse_vector(text: str) -> Vec:
    """Parse a whitespace-separated list of rationals (any line layout)."""
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        for col, tok in enumerate(line.split(), start=1):
            try:
                entries.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(lineno, col, f"bad rational {tok!r}") from None
    return tuple(entries)
