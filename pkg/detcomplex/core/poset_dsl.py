"""
Line oriented text format for graded labeled posets::

    # comments run to the end of the line
    poset boolean_lattice(2)        (optional name)
    rank 2                          (optional declared rank)
    elem {} rank 0
    elem {1} rank 1
    cover {} {1} label x[1,1]
    cover a b label 2 + 3/2*x[1,-2] - x[2,1]

An affine expression is a sum of terms, each a rational, ``rational*var`` or ``var``, with
variables written ``x[i,j]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError
from ..types.affine import AffineForm, VarId
from ..types.poset import Cover, Element, GradedLabeledPoset
from ..types.rational import parse_rational

__all__ = ['PosetDoc', 'parse_poset', 'serialize_poset', 'parse_affine', 'format_affine']

_TOKEN_RE = re.compile(r'\s*(?:(?P<var>x\[\s*[+-]?\d+\s*,\s*[+-]?\d+\s*\])|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*]))')
_VAR_RE = re.compile(r'x\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]')


@dataclass(slots=True)
class PosetDoc:
    """A parsed poset and where each element and cover was declared (line, column)"""
    poset: GradedLabeledPoset
    element_locations: dict[str, tuple[int, int]] = field(default_factory=dict)
    cover_locations: list[tuple[int, int]] = field(default_factory=list)


def _tokenize(text: str, line: int, offset: int) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            col = offset + pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"Unexpected '{text[pos:].strip()[:12]}' in affine expression", line, col)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), offset + start))
        pos = match.end()
    return tokens


def _var(token: str, line: int, column: int) -> VarId:
    match = _VAR_RE.fullmatch(token)
    try:
        return VarId(int(match.group(1)), int(match.group(2)))
    except ValueError as e:
        raise ParseError(str(e), line, column) from None


def parse_affine(text: str, line: int | None = None, column: int = 1) -> AffineForm:
    """
    Parse an affine expression.

    :param text: The expression
    :param line: Line number for error messages
    :param column: Column of the first character of ``text`` (1-based)
    :raises ParseError: On malformed input, with the column of the offending token
    """
    tokens = _tokenize(text, line, column)
    if not tokens:
        raise ParseError("Empty affine expression", line, column)
    constant = Fraction(0)
    coeffs: dict[VarId, Fraction] = {}
    pos = 0
    sign = 1
    expect_term = True
    # a term may carry one sign of its own, as in "2 + -3*x[1,1]"
    signed = False
    while pos < len(tokens):
        kind, value, col = tokens[pos]
        if not expect_term:
            if kind != 'op' or value == '*':
                raise ParseError(f"Expected '+' or '-', got '{value}'", line, col)
            sign = 1 if value == '+' else -1
            expect_term = True
            signed = False
            pos += 1
            continue
        if kind == 'op':
            if value in '+-' and not signed:
                if value == '-':
                    sign = -sign
                signed = True
                pos += 1
                continue
            raise ParseError(f"Expected a term, got '{value}'", line, col)
        if kind == 'var':
            var = _var(value, line, col)
            coeffs[var] = coeffs.get(var, Fraction(0)) + sign
            pos += 1
        else:
            number = parse_rational(value, line, col) * sign
            if pos + 1 < len(tokens) and tokens[pos + 1][1] == '*':
                if pos + 2 >= len(tokens) or tokens[pos + 2][0] != 'var':
                    bad = tokens[pos + 2] if pos + 2 < len(tokens) else tokens[pos + 1]
                    raise ParseError("Expected a variable after '*'", line, bad[2])
                var = _var(tokens[pos + 2][1], line, tokens[pos + 2][2])
                coeffs[var] = coeffs.get(var, Fraction(0)) + number
                pos += 3
            else:
                constant += number
                pos += 1
        expect_term = False
    if expect_term:
        raise ParseError("Affine expression ends with an operator", line, tokens[-1][2])
    return AffineForm.build(constant, coeffs)


def format_affine(form: AffineForm) -> str:
    return str(form)


def _fields(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r'\S+', line)]


def parse_poset(text: str) -> PosetDoc:
    """
    Parse the poset text format.

    :raises ParseError: On a syntax error, a duplicate element, or a cover naming an unknown
                        element; always with line and column
    """
    name = ''
    rank: int | None = None
    elements: list[Element] = []
    covers: list[Cover] = []
    doc = PosetDoc(GradedLabeledPoset((), ()))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        fields = _fields(line)
        if not fields:
            continue
        keyword, kcol = fields[0]
        if keyword == 'poset':
            if len(fields) < 2:
                raise ParseError("Missing poset name", lineno, kcol)
            name = line[fields[1][1] - 1:].strip()
        elif keyword == 'rank':
            if len(fields) != 2:
                raise ParseError("Expected 'rank <d>'", lineno, kcol)
            rank = _int(fields[1], lineno)
        elif keyword == 'elem':
            if len(fields) != 4 or fields[2][0] != 'rank':
                raise ParseError("Expected 'elem <id> rank <r>'", lineno, kcol)
            eid, ecol = fields[1]
            if eid in doc.element_locations:
                first = doc.element_locations[eid][0]
                raise ParseError(f"Duplicate element '{eid}' (first declared on line {first})", lineno, ecol)
            elements.append(Element(eid, _int(fields[3], lineno)))
            doc.element_locations[eid] = (lineno, ecol)
        elif keyword == 'cover':
            if len(fields) < 5 or fields[3][0] != 'label':
                raise ParseError("Expected 'cover <id> <id> label <affine-expr>'", lineno, kcol)
            for eid, ecol in fields[1:3]:
                if eid not in doc.element_locations:
                    raise ParseError(f"Unknown element '{eid}'", lineno, ecol)
            label_col = fields[4][1]
            label = parse_affine(line[label_col - 1:], lineno, label_col)
            covers.append(Cover(fields[1][0], fields[2][0], label))
            doc.cover_locations.append((lineno, kcol))
        else:
            raise ParseError(f"Unknown directive '{keyword}'", lineno, kcol)

    doc.poset = GradedLabeledPoset(tuple(elements), tuple(covers), rank, name)
    return doc


def _int(token: tuple[str, int], line: int) -> int:
    text, col = token
    if not re.fullmatch(r'[+-]?\d+', text):
        raise ParseError(f"Expected an integer, got '{text}'", line, col)
    return int(text)


def serialize_poset(poset: GradedLabeledPoset) -> str:
    """Text form of a poset; :func:`parse_poset` reads it back to an equal poset."""
    lines = []
    if poset.name:
        lines.append(f"poset {poset.name}")
    if poset.rank is not None:
        lines.append(f"rank {poset.rank}")
    lines.extend(f"elem {e.id} rank {e.rank}" for e in poset.elements)
    lines.extend(f"cover {c.lower} {c.upper} label {format_affine(c.label)}" for c in poset.covers)
    return "\n".join(lines) + "\n"
