"""
Affine-linear forms in the variables ``x[i,j]`` and square matrices of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Self

from ..core.errors import MissingAssignmentError, ShapeError
from .matrix import RatMatrix
from .rational import as_rational, format_rational

__all__ = ['VarId', 'AffineForm', 'AffineMatrix', 'Point']


@dataclass(frozen=True, slots=True)
class VarId:
    """
    One variable ``x[row,col]`` of a family

    A negative ``col`` encodes the ``-j`` columns of the hyperoctahedral permanent.
    """
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1:
            raise ValueError(f"Variable row must be >= 1, got {self.row}")
        if self.col == 0:
            raise ValueError("Variable column must be nonzero")

    @property
    def sort_key(self) -> tuple[int, int, int]:
        """Serialization order: row, then ``|col|``, positive column before negative."""
        return self.row, abs(self.col), 0 if self.col > 0 else 1

    def __lt__(self, other: VarId) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return f"x[{self.row},{self.col}]"


Point = Mapping[VarId, Fraction]


@dataclass(frozen=True, slots=True)
class AffineForm:
    """
    ``constant + sum(coeff * var)`` with exact coefficients

    Zero coefficients are never stored; terms are kept sorted by :attr:`VarId.sort_key`.
    """
    constant: Fraction = Fraction(0)
    terms: tuple[tuple[VarId, Fraction], ...] = field(default=())

    @classmethod
    def build(cls, constant: Fraction | int = 0, terms: Mapping[VarId, Fraction | int] | None = None) -> Self:
        """Normalize a constant and a coefficient mapping into a form."""
        items = []
        for var, coeff in (terms or {}).items():
            coeff = as_rational(coeff)
            if coeff != 0:
                items.append((var, coeff))
        items.sort(key=lambda item: item[0].sort_key)
        return cls(as_rational(constant), tuple(items))

    @classmethod
    def const(cls, value: Fraction | int) -> Self:
        return cls(as_rational(value), ())

    @classmethod
    def var(cls, var: VarId, coeff: Fraction | int = 1) -> Self:
        return cls.build(0, {var: coeff})

    @property
    def coefficients(self) -> dict[VarId, Fraction]:
        return dict(self.terms)

    def coefficient(self, var: VarId) -> Fraction:
        return self.coefficients.get(var, Fraction(0))

    def variables(self) -> tuple[VarId, ...]:
        return tuple(v for v, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0

    def evaluate(self, point: Point) -> Fraction:
        """
        Value of the form at a point.

        :raises MissingAssignmentError: If a variable of the form has no value
        """
        total = self.constant
        for var, coeff in self.terms:
            try:
                total += coeff * point[var]
            except KeyError:
                raise MissingAssignmentError(var) from None
        return total

    def __add__(self, other: AffineForm | Fraction | int) -> AffineForm:
        if not isinstance(other, AffineForm):
            other = AffineForm.const(other)
        coeffs = self.coefficients
        for var, coeff in other.terms:
            coeffs[var] = coeffs.get(var, Fraction(0)) + coeff
        return AffineForm.build(self.constant + other.constant, coeffs)

    __radd__ = __add__

    def __mul__(self, scalar: Fraction | int) -> AffineForm:
        scalar = as_rational(scalar)
        return AffineForm.build(self.constant * scalar, {v: c * scalar for v, c in self.terms})

    __rmul__ = __mul__

    def __neg__(self) -> AffineForm:
        return self * -1

    def __sub__(self, other: AffineForm | Fraction | int) -> AffineForm:
        return self + (-other if isinstance(other, AffineForm) else -as_rational(other))

    def __str__(self) -> str:
        parts: list[str] = []
        if self.constant != 0 or not self.terms:
            parts.append(format_rational(self.constant))
        for var, coeff in self.terms:
            magnitude = abs(coeff)
            text = str(var) if magnitude == 1 else f"{format_rational(magnitude)}*{var}"
            if not parts:
                parts.append(text if coeff > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(parts)


class AffineMatrix:
    """
    A square matrix of affine forms, the ``F`` of a determinantal representation ``f = det(F)``
    """
    __slots__ = ('size', 'entries')

    size: int
    entries: tuple[tuple[AffineForm, ...], ...]

    def __init__(self, entries: Iterable[Iterable[AffineForm | Fraction | int]]):
        rows = tuple(tuple(e if isinstance(e, AffineForm) else AffineForm.const(e) for e in r) for r in entries)
        if any(len(r) != len(rows) for r in rows):
            raise ShapeError("AffineMatrix must be square")
        object.__setattr__(self, 'size', len(rows))
        object.__setattr__(self, 'entries', rows)

    def __setattr__(self, key, value):
        raise AttributeError("AffineMatrix is immutable")

    @classmethod
    def zeros(cls, size: int) -> Self:
        return cls([[AffineForm()] * size for _ in range(size)])

    def __getitem__(self, index: tuple[int, int]) -> AffineForm:
        i, j = index
        return self.entries[i][j]

    def negate_row(self, row: int) -> AffineMatrix:
        rows = [list(r) for r in self.entries]
        rows[row] = [-e for e in rows[row]]
        return AffineMatrix(rows)

    def variables(self) -> list[VarId]:
        """All variables occurring in the matrix, in serialization order."""
        found = {v for r in self.entries for e in r for v in e.variables()}
        return sorted(found, key=lambda v: v.sort_key)

    def evaluate(self, point: Point) -> RatMatrix:
        """
        Entrywise evaluation.

        :raises MissingAssignmentError: If a variable occurring in the matrix has no value
        """
        return RatMatrix(((e.evaluate(point) for e in r) for r in self.entries), cols=self.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"AffineMatrix({self.size}x{self.size})"
