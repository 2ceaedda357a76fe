from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Self, Sequence

from ..core.errors import ShapeError
from .rational import as_rational, format_rational

__all__ = ['RatMatrix']


def _integer_rows(data: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """
    Scale every row by the lcm of its denominators.

    :return: The integer rows and the product of the scale factors
    """
    rows = []
    scale = 1
    for row in data:
        factor = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([x.numerator * (factor // x.denominator) for x in row])
        scale *= factor
    return rows, scale


def _bareiss_det(a: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix, ``a`` is destroyed."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _bareiss_rank(a: list[list[int]]) -> int:
    """Fraction-free row echelon rank of an integer matrix, ``a`` is destroyed."""
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    r = 0
    prev = 1
    for c in range(n_cols):
        if r == n_rows:
            break
        for i in range(r, n_rows):
            if a[i][c] != 0:
                if i != r:
                    a[r], a[i] = a[i], a[r]
                break
        else:
            continue
        pivot = a[r][c]
        row_r = a[r]
        for i in range(r + 1, n_rows):
            row_i = a[i]
            factor = row_i[c]
            for j in range(c + 1, n_cols):
                row_i[j] = (row_i[j] * pivot - factor * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
    return r


class RatMatrix:
    """
    An immutable dense matrix of exact rationals

    Entries are :class:`fractions.Fraction`, stored row-major. Determinant and rank never touch
    floating point: rows are scaled to integers and reduced by fraction-free elimination.
    """
    __slots__ = ('rows', 'cols', 'data')

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __init__(self, data: Iterable[Iterable[Fraction | int | str]], cols: int | None = None):
        """
        :param data: Rows of entries (ints, Fractions or rational text)
        :param cols: Column count, only needed for matrices without rows
        :raises ShapeError: If the rows are ragged
        """
        rows = tuple(tuple(as_rational(x) for x in row) for row in data)
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ShapeError(f"Ragged rows: row lengths {sorted(widths)}")
        object.__setattr__(self, 'rows', len(rows))
        object.__setattr__(self, 'cols', widths.pop() if widths else (cols or 0))
        object.__setattr__(self, 'data', rows)

    def __setattr__(self, key, value):
        raise AttributeError("RatMatrix is immutable")

    # Constructors

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Self:
        cols = rows if cols is None else cols
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> Self:
        """The all-ones matrix ``U_{rows,cols}``."""
        cols = rows if cols is None else cols
        return cls(((1,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n: int) -> Self:
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def from_function(cls, rows: int, cols: int, fn) -> Self:
        """Build the matrix whose ``(i, j)`` entry is ``fn(i, j)`` (0-based indices)."""
        return cls(((fn(i, j) for j in range(cols)) for i in range(rows)), cols=cols)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[RatMatrix]]) -> Self:
        """
        Assemble a block matrix.

        :param blocks: Grid of blocks, all blocks in a block row have the same height and all
                       blocks in a block column the same width
        :raises ShapeError: If the block sizes don't line up
        """
        out: list[list[Fraction]] = []
        for block_row in blocks:
            height = block_row[0].rows
            if any(b.rows != height for b in block_row):
                raise ShapeError("Blocks in a block row must have equal heights")
            for r in range(height):
                line: list[Fraction] = []
                for b in block_row:
                    line.extend(b.data[r])
                out.append(line)
        widths = {len(row) for row in out}
        if len(widths) > 1:
            raise ShapeError("Block columns must have equal widths")
        return cls(out)

    # Element access

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self.data[i][j]

    def row(self, row: int) -> tuple[Fraction, ...]:
        return self.data[row]

    def col(self, column: int) -> tuple[Fraction, ...]:
        if column < 0 or column >= self.cols:
            raise IndexError(f"Column index {column} out of bounds")
        return tuple(r[column] for r in self.data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def replace(self, row: int, column: int, value: Fraction | int) -> Self:
        """Return a copy with one entry changed."""
        data = self.to_lists()
        data[row][column] = as_rational(value)
        return RatMatrix(data, cols=self.cols)

    # Arithmetic

    def transpose(self) -> Self:
        return RatMatrix(zip(*self.data), cols=self.rows) if self.rows else RatMatrix.zeros(self.cols, 0)

    def mult(self, other: RatMatrix) -> Self:
        """
        Matrix product.

        :raises ShapeError: If the inner dimensions differ
        """
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_cols = other.transpose().data if other.rows else ((),) * other.cols
        return RatMatrix(
            ((sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in other_cols) for r in self.data),
            cols=other.cols,
        )

    def scale(self, factor: Fraction | int) -> Self:
        factor = as_rational(factor)
        return RatMatrix(((x * factor for x in r) for r in self.data), cols=self.cols)

    def sum(self, other: RatMatrix) -> Self:
        self._check_same_shape(other)
        return RatMatrix(((a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), cols=self.cols)

    def diff(self, other: RatMatrix) -> Self:
        self._check_same_shape(other)
        return RatMatrix(((a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)), cols=self.cols)

    def __matmul__(self, other: RatMatrix) -> Self:
        return self.mult(other)

    def __add__(self, other: RatMatrix) -> Self:
        return self.sum(other)

    def __sub__(self, other: RatMatrix) -> Self:
        return self.diff(other)

    def __neg__(self) -> Self:
        return self.scale(-1)

    def minor_matrix(self, drop_rows: Iterable[int], drop_cols: Iterable[int]) -> Self:
        """The submatrix left after removing the given rows and columns (0-based)."""
        drop_rows = set(drop_rows)
        drop_cols = set(drop_cols)
        keep_cols = [j for j in range(self.cols) if j not in drop_cols]
        return RatMatrix(
            ((r[j] for j in keep_cols) for i, r in enumerate(self.data) if i not in drop_rows),
            cols=len(keep_cols),
        )

    # Exact linear algebra

    def det(self) -> Fraction:
        """
        Return the exact determinant of a square matrix.

        :return: The determinant
        :raises ShapeError: If the matrix is not square
        """
        if not self.is_square():
            raise ShapeError(f"Determinant needs a square matrix, got {self.rows}x{self.cols}")
        ints, scale = _integer_rows(self.data)
        return Fraction(_bareiss_det(ints), scale)

    def rank(self) -> int:
        """Return the exact rank over the rationals."""
        if self.rows == 0 or self.cols == 0:
            return 0
        ints, _ = _integer_rows(self.data)
        return _bareiss_rank(ints)

    # Predicates

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        return all(self.data[i][j] == self.data[j][i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def _check_same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"Matrices must have same dimensions: {self.shape} vs {other.shape}")

    # Dunder

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"
