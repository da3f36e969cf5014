"""
Exact linear algebra over the rationals.

Ranks, kernels, images and the cohomology of a two-step complex
C^{k-1} -> C^k -> C^{k+1}. Elimination runs fraction-free (Bareiss) on
integer-scaled rows; results are brought to reduced row-echelon form so
every basis this module hands out is canonical and comparable by equality.
No floating point anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from src.errors import CompositionNotZero, NotInSubspace

Vector = tuple[Fraction, ...]

# Below this share of nonzero entries a matrix keeps a dict of entries.
SPARSE_DENSITY = 0.25

_ZERO = Fraction(0)


def as_fraction(x: int | Fraction | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zero_vector(dim: int) -> Vector:
    return (_ZERO,) * dim


class RationalMatrix:
    """
    rows x cols matrix of exact rationals.

    Storage is chosen at construction: a dict of nonzero entries when the
    density is below SPARSE_DENSITY, a tuple of row tuples otherwise.
    Instances are immutable.
    """

    __slots__ = ("rows", "cols", "_sparse", "_dense")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: dict[tuple[int, int], int | Fraction] | None = None,
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError(f"Matrix shape must be non-negative, got {rows}x{cols}")
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"Entry ({i}, {j}) outside a {rows}x{cols} matrix")
            value = as_fraction(value)
            if value:
                clean[(i, j)] = value
        self.rows = rows
        self.cols = cols
        size = rows * cols
        if size and len(clean) / size >= SPARSE_DENSITY:
            self._sparse = None
            self._dense = tuple(
                tuple(clean.get((i, j), _ZERO) for j in range(cols)) for i in range(rows)
            )
        else:
            self._sparse = clean
            self._dense = None

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> "RationalMatrix":
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError(f"Row {i} has length {len(row)}, expected {cols}")
            for j, value in enumerate(row):
                if value:
                    entries[(i, j)] = value
        return cls(len(rows), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int | Fraction]], rows: int) -> "RationalMatrix":
        entries = {}
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise ValueError(f"Column {j} has length {len(column)}, expected {rows}")
            for i, value in enumerate(column):
                if value:
                    entries[(i, j)] = value
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    # --- access -----------------------------------------------------------

    @property
    def storage(self) -> str:
        return "sparse" if self._sparse is not None else "dense"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        if self._sparse is not None:
            return self._sparse.get((i, j), _ZERO)
        return self._dense[i][j]

    def entries(self) -> dict[tuple[int, int], Fraction]:
        """Nonzero entries keyed by (row, col)."""
        if self._sparse is not None:
            return dict(self._sparse)
        return {
            (i, j): value
            for i, row in enumerate(self._dense)
            for j, value in enumerate(row)
            if value
        }

    def to_rows(self) -> list[list[Fraction]]:
        if self._dense is not None:
            return [list(row) for row in self._dense]
        out = [[_ZERO] * self.cols for _ in range(self.rows)]
        for (i, j), value in self._sparse.items():
            out[i][j] = value
        return out

    def is_zero(self) -> bool:
        return not self.entries()

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries().items()})

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not fit {self.rows}x{self.cols}")
        out = [_ZERO] * self.rows
        for (i, j), value in self.entries().items():
            if vector[j]:
                out[i] += value * vector[j]
        return tuple(out)

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        by_row: dict[int, list[tuple[int, Fraction]]] = {}
        for (k, j), value in other.entries().items():
            by_row.setdefault(k, []).append((j, value))
        out: dict[tuple[int, int], Fraction] = {}
        for (i, k), left in self.entries().items():
            for j, right in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), _ZERO) + left * right
        return RationalMatrix(self.rows, other.cols, out)

    __matmul__ = matmul

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.entries().items())))

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, {self.storage}, nnz={len(self.entries())})"


# --- elimination ---------------------------------------------------------


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; the row space is unchanged."""
    out = []
    for row in rows:
        scale = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns the nonzero rows and pivot columns."""
    a = [row[:] for row in rows]
    m = len(a)
    pivots: list[int] = []
    previous = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        pivot_row = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        for i in range(r + 1, m):
            lead = a[i][c]
            for j in range(c + 1, ncols):
                a[i][j] = (pivot * a[i][j] - lead * a[r][j]) // previous
            a[i][c] = 0
        previous = pivot
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    echelon, pivots = _bareiss_echelon(_integer_rows(rows), ncols)
    reduced = [[Fraction(x) for x in row] for row in echelon]
    for r, c in enumerate(pivots):
        lead = reduced[r][c]
        reduced[r] = [x / lead for x in reduced[r]]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        for above in range(r):
            factor = reduced[above][c]
            if factor:
                reduced[above] = [x - factor * y for x, y in zip(reduced[above], reduced[r])]
    return reduced, pivots


def rref(m: RationalMatrix) -> tuple[list[Vector], list[int]]:
    """Reduced row-echelon form: nonzero rows and their pivot columns."""
    rows, pivots = _rref_rows(m.to_rows(), m.cols)
    return [tuple(row) for row in rows], pivots


def rank(m: RationalMatrix) -> int:
    _, pivots = _bareiss_echelon(_integer_rows(m.to_rows()), m.cols)
    return len(pivots)


def determinant(m: RationalMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError(f"Determinant of a non-square {m.rows}x{m.cols} matrix")
    a = m.to_rows()
    det = Fraction(1)
    for c in range(m.cols):
        pivot_row = next((i for i in range(c, m.rows) if a[i][c] != 0), None)
        if pivot_row is None:
            return _ZERO
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            det = -det
        pivot = a[c][c]
        det *= pivot
        for i in range(c + 1, m.rows):
            factor = a[i][c] / pivot
            if factor:
                a[i] = [x - factor * y for x, y in zip(a[i], a[c])]
    return det


def kernel_basis(m: RationalMatrix) -> list[Vector]:
    """Basis of ker(m), one vector per free column in ascending order."""
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[free] = Fraction(1)
        for row, c in zip(rows, pivots):
            v[c] = -row[free]
        basis.append(tuple(v))
    return basis


def image_basis(m: RationalMatrix) -> tuple[list[Vector], list[int]]:
    """Canonical (RREF) basis of the column space of m, with pivots."""
    return rref(m.transpose())


def _reduce(v: Sequence[Fraction], rows: Sequence[Vector], pivots: Sequence[int]) -> list[Fraction]:
    w = list(v)
    for row, c in zip(rows, pivots):
        factor = w[c]
        if factor:
            w = [x - factor * y for x, y in zip(w, row)]
    return w


def solve_in_span(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    """Coefficients c with sum c_i basis_i = v. Basis vectors must be independent."""
    dim = len(v)
    if not basis:
        if any(v):
            raise NotInSubspace("Nonzero vector is not in the zero subspace")
        return ()
    augmented = RationalMatrix.from_columns([*basis, v], rows=dim)
    rows, pivots = rref(augmented)
    n = len(basis)
    if n in pivots:
        raise NotInSubspace("Vector is not in the span of the given basis")
    if len(pivots) != n:
        raise ValueError("Basis vectors are linearly dependent")
    coefficients = [_ZERO] * n
    for row, c in zip(rows, pivots):
        coefficients[c] = row[n]
    return tuple(coefficients)


@dataclass(frozen=True)
class SubquotientBasis:
    """
    Canonical basis of ker(d_out)/im(d_in) inside a space of dimension ambient_dim.

    Representatives are in reduced row-echelon form and vanish on the pivot
    columns of the image, so they are determined by the two subspaces alone.
    """

    ambient_dim: int
    representatives: tuple[Vector, ...]
    degree: int = 0
    image: tuple[Vector, ...] = ()
    image_pivots: tuple[int, ...] = ()
    pivots: tuple[int, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def is_exact(self, v: Sequence[Fraction]) -> bool:
        return not any(_reduce(v, self.image, self.image_pivots))

    def coordinates(self, v: Sequence[Fraction]) -> Vector:
        """Coordinates of the class of the cocycle v in the representative basis."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"Vector of length {len(v)} is not in a space of dimension {self.ambient_dim}")
        w = _reduce(v, self.image, self.image_pivots)
        coefficients = []
        for row, c in zip(self.representatives, self.pivots):
            factor = w[c]
            coefficients.append(factor)
            if factor:
                w = [x - factor * y for x, y in zip(w, row)]
        if any(w):
            raise NotInSubspace("Vector is not a cocycle")
        return tuple(coefficients)


def cohomology(d_in: RationalMatrix, d_out: RationalMatrix, degree: int = 0) -> SubquotientBasis:
    """
    ker(d_out)/im(d_in) for C^{k-1} --d_in--> C^k --d_out--> C^k+1.

    d_in has shape (dim C^k, dim C^{k-1}), d_out has shape (dim C^{k+1}, dim C^k).
    Raises CompositionNotZero unless d_out . d_in = 0.
    """
    if d_in.rows != d_out.cols:
        raise ValueError(f"Incompatible differentials {d_in.shape} and {d_out.shape}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero(f"d_out . d_in != 0 in degree {degree}")
    ambient = d_in.rows
    image, image_pivots = image_basis(d_in)
    kernel = kernel_basis(d_out)
    reduced = [_reduce(z, image, image_pivots) for z in kernel]
    reps, pivots = _rref_rows(reduced, ambient) if reduced else ([], [])
    result = SubquotientBasis(
        ambient_dim=ambient,
        representatives=tuple(tuple(r) for r in reps),
        degree=degree,
        image=tuple(image),
        image_pivots=tuple(image_pivots),
        pivots=tuple(pivots),
    )
    assert result.dimension == len(kernel) - len(image), "cohomology dimension drifted"
    return result
