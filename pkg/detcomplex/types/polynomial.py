from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Self

from ..core.errors import MissingAssignmentError
from .affine import AffineForm, Point, VarId
from .rational import as_rational, format_rational

__all__ = ['Monomial', 'Polynomial']

# Sorted tuple of (variable, exponent) pairs, exponents >= 1
Monomial = tuple[tuple[VarId, int], ...]


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    powers: dict[VarId, int] = dict(a)
    for var, exp in b:
        powers[var] = powers.get(var, 0) + exp
    return tuple(sorted(powers.items(), key=lambda item: item[0].sort_key))


class Polynomial:
    """
    Sparse multivariate polynomial with exact rational coefficients

    Terms are stored as ``{monomial: coefficient}`` with zero coefficients removed, so two
    polynomials are equal exactly when they agree monomial by monomial.
    """
    __slots__ = ('terms',)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | Iterable[tuple[Monomial, Fraction | int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in items:
            coeff = as_rational(coeff)
            if coeff == 0:
                continue
            total = acc.get(mono, Fraction(0)) + coeff
            if total == 0:
                acc.pop(mono, None)
            else:
                acc[mono] = total
        self.terms = acc

    @classmethod
    def const(cls, value: Fraction | int) -> Self:
        return cls({(): value})

    @classmethod
    def from_affine(cls, form: AffineForm) -> Self:
        return cls([((), form.constant)] + [(((var, 1),), coeff) for var, coeff in form.terms])

    def __add__(self, other: Polynomial) -> Polynomial:
        return Polynomial(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> Polynomial:
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | Fraction | int) -> Polynomial:
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        products = []
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                products.append((_mul_monomials(m1, m2), c1 * c2))
        return Polynomial(products)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v, _ in m}

    def derivative(self, var: VarId) -> Polynomial:
        """Formal partial derivative with respect to ``var``."""
        out = []
        for mono, coeff in self.terms.items():
            powers = dict(mono)
            exp = powers.get(var, 0)
            if exp == 0:
                continue
            if exp == 1:
                del powers[var]
            else:
                powers[var] = exp - 1
            out.append((tuple(sorted(powers.items(), key=lambda item: item[0].sort_key)), coeff * exp))
        return Polynomial(out)

    def evaluate(self, point: Point) -> Fraction:
        """
        Value at a point.

        :raises MissingAssignmentError: If a variable of the polynomial has no value
        """
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for var, exp in mono:
                try:
                    value *= point[var] ** exp
                except KeyError:
                    raise MissingAssignmentError(var) from None
            total += value
        return total

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        def mono_key(item):
            mono = item[0]
            return -sum(e for _, e in mono), [(v.sort_key, e) for v, e in mono]

        parts = []
        for mono, coeff in sorted(self.terms.items(), key=mono_key):
            factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono]
            if not factors:
                parts.append(format_rational(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(coeff) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self})"
