"""
Exact rational scalars and their text syntax ``p/q`` or ``p``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..core.errors import ParseError

__all__ = ['Rational', 'parse_rational', 'format_rational', 'as_rational']

Rational = Fraction

_RATIONAL_RE = re.compile(r'^([+-]?\d+)(?:/(\d+))?$')


def parse_rational(text: str, line: int | None = None, column: int | None = None) -> Fraction:
    """
    Parse a rational in ``p/q`` or ``p`` syntax.

    :param text: The token to parse
    :param line: Line number used in the error message
    :param column: Column number used in the error message
    :return: The exact value in lowest terms
    :raises ParseError: If the token is not a rational or the denominator is zero
    """
    match = _RATIONAL_RE.match(text.strip())
    if not match:
        raise ParseError(f"Malformed rational '{text}'", line, column)
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise ParseError(f"Zero denominator in '{text}'", line, column)
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value: Fraction | int) -> str:
    """Exact text of a rational, the denominator omitted when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_rational(value: Fraction | int | str) -> Fraction:
    """Coerce ints and rational text to :class:`Fraction`; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot use {type(value).__name__} as an exact rational")
