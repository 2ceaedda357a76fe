"""
Text formats: point matrices, and the TOML documents for determinantal representations,
certificates and verification reports.

Documents are written by hand in a fixed key order so the output is byte-stable, and read
back with :mod:`tomllib`. Every rational is a ``"p/q"`` (or ``"p"``) string, never a float.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable

from .. import __version__
from .errors import DetComplexError, InvalidSpecError, ParseError, ShapeError
from .poset_dsl import parse_affine
from ..types.affine import AffineMatrix, VarId
from ..types.certificate import HessianCertificate, ZeroPoint
from ..types.detrep import DetRep, VerificationReport
from ..types.family import FamilyKind, FamilySpec
from ..types.matrix import RatMatrix
from ..types.rational import format_rational, parse_rational

__all__ = [
    'SCHEMA_VERSION', 'parse_matrix', 'format_matrix', 'detrep_to_toml',
    'detrep_from_toml', 'certificate_to_toml', 'certificate_from_toml', 'report_to_toml',
    'load_document',
]

SCHEMA_VERSION = "1"

_VAR_RE = re.compile(r'^x\[(-?\d+),(-?\d+)\]$')


#
# Matrices
#

def parse_matrix(text: str, shape: tuple[int, int] | None = None) -> RatMatrix:
    """
    Parse whitespace separated rationals, one matrix row per line.

    Blank lines and ``#`` comments are ignored.

    :param text: The matrix text
    :param shape: Expected ``(rows, cols)``, if any
    :raises ParseError: On a malformed rational (with line and column) or ragged rows
    :raises ShapeError: If the shape differs from ``shape``
    """
    rows: list[list[Fraction]] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r'\S+', line)]
        if not tokens:
            continue
        row = [parse_rational(tok, lineno, col) for tok, col in tokens]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"Ragged rows: expected {width} entries, got {len(row)}", lineno, tokens[0][1])
        rows.append(row)
    matrix = RatMatrix(rows, cols=width or 0)
    if shape is not None and matrix.shape != tuple(shape):
        raise ShapeError(f"Expected a {shape[0]}x{shape[1]} matrix, got {matrix.rows}x{matrix.cols}")
    return matrix


def format_matrix(matrix: RatMatrix) -> str:
    """One row per line, entries separated by single spaces."""
    return "".join(" ".join(format_rational(x) for x in row) + "\n" for row in matrix.data)


#
# TOML helpers
#

def _str(value: str) -> str:
    return '"' + value.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Fraction):
        return _str(format_rational(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return _str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_value(v) for v in value) + "]"
    raise TypeError(f"Cannot write {type(value).__name__} to a document")


def _field(key: str, value: Any) -> str:
    return f"{key} = {_value(value)}"


def _table_rows(key: str, rows: Iterable[Iterable[Any]]) -> list[str]:
    lines = [f"{key} = ["]
    lines.extend(f"    {_value(list(r))}," for r in rows)
    lines.append("]")
    return lines


def _header(kind: str) -> list[str]:
    return [_field('schema', SCHEMA_VERSION), _field('tool_version', __version__), _field('kind', kind)]


def _family_lines(spec: FamilySpec) -> list[str]:
    lines = ["[family]", _field('kind', spec.kind.value), _field('n', spec.n)]
    if not spec.is_hoperm:
        lines.append(_field('composition', list(spec.composition)))
    return lines


def _family_from(data: dict) -> FamilySpec:
    try:
        kind = FamilyKind(data['kind'])
        return FamilySpec(kind, int(data['n']), tuple(data.get('composition', ())))
    except (KeyError, ValueError, TypeError) as e:
        raise InvalidSpecError(f"Malformed [family] section: {e}") from None


def _rational(value: Any, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{what} must be a rational string, got {value!r}")
    return parse_rational(str(value))


def _var(text: str) -> VarId:
    match = _VAR_RE.match(str(text).replace(' ', ''))
    if not match:
        raise ParseError(f"Malformed variable '{text}'")
    try:
        return VarId(int(match.group(1)), int(match.group(2)))
    except ValueError as e:
        raise ParseError(f"Malformed variable '{text}': {e}") from None


def load_document(text: str, kind: str) -> dict:
    """
    Parse a TOML document and check its schema and kind.

    :raises ParseError: If the TOML is malformed, the schema unknown, or the kind differs
    """
    import tomllib

    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ParseError(f"Malformed document: {e}") from None
    if data.get('schema') != SCHEMA_VERSION:
        raise ParseError(f"Unsupported document schema {data.get('schema')!r}, expected {SCHEMA_VERSION!r}")
    if data.get('kind') != kind:
        raise ParseError(f"Expected a {kind} document, got {data.get('kind')!r}")
    return data


#
# Determinantal representations
#

def detrep_to_toml(rep: DetRep) -> str:
    """Serialize a representation; entries are affine expressions in the poset text syntax."""
    lines = _header('detrep')
    lines += [
        _field('size', rep.size),
        _field('chain_degree', rep.chain_degree),
        _field('cycle_length', rep.cycle_length),
        _field('sign_fixed', rep.sign_fixed),
        _field('top_adjoined', rep.top_adjoined),
        _field('source', rep.source),
        _field('vertices', list(rep.vertices)),
    ]
    if rep.spec is not None:
        lines += [""] + _family_lines(rep.spec)
    lines += ["", "[matrix]"]
    lines += _table_rows('rows', ([str(e) for e in row] for row in rep.matrix.entries))
    return "\n".join(lines) + "\n"


def detrep_from_toml(text: str) -> DetRep:
    """
    Read a representation document.

    :raises ParseError: On malformed documents or entries
    :raises ShapeError: If the matrix is not square
    """
    data = load_document(text, 'detrep')
    try:
        rows = data['matrix']['rows']
    except (KeyError, TypeError):
        raise ParseError("Missing [matrix] rows") from None
    entries = []
    for r, row in enumerate(rows, start=1):
        if not isinstance(row, list):
            raise ParseError(f"Matrix row {r} is not a list")
        entries.append([parse_affine(str(e), r) for e in row])
    matrix = AffineMatrix(entries)
    if 'size' in data and data['size'] != matrix.size:
        raise ShapeError(f"Document declares size {data['size']} but has a {matrix.size}x{matrix.size} matrix")
    try:
        chain_degree = int(data.get('chain_degree', 1))
        cycle_length = int(data.get('cycle_length', chain_degree))
    except (ValueError, TypeError) as e:
        raise ParseError(f"Malformed representation document: {e}") from None
    return DetRep(
        matrix=matrix,
        chain_degree=chain_degree,
        cycle_length=cycle_length,
        sign_fixed=bool(data.get('sign_fixed', False)),
        top_adjoined=bool(data.get('top_adjoined', False)),
        vertices=tuple(data.get('vertices', ())),
        spec=_family_from(data['family']) if 'family' in data else None,
        source=str(data.get('source', '')),
    )


#
# Certificates
#

def certificate_to_toml(cert: HessianCertificate) -> str:
    """Serialize a certificate, including the zero point and every verdict."""
    zero = cert.zero
    lines = _header('certificate') + [""] + _family_lines(cert.spec) + ["", "[zero]"]
    if zero.case is not None:
        lines.append(_field('case', zero.case))
    lines += [_field('special_row', zero.special_row), _field('special_value', zero.special_value)]
    for key in ('c', 'k', 'd'):
        value = getattr(zero, key)
        if value is not None:
            lines.append(_field(key, value))
    if zero.partition:
        lines.append(_field('partition', list(zero.partition)))
    if zero.column_order:
        lines.append(_field('column_order', list(zero.column_order)))
    lines += _table_rows('matrix', ([format_rational(x) for x in row] for row in zero.matrix.data))

    lines += [
        "", "[result]",
        _field('value', cert.value),
        _field('hessian_rows', cert.hessian_rows),
        _field('hessian_cols', cert.hessian_cols),
        _field('rank', cert.rank),
        _field('lower_bound', cert.lower_bound),
        _field('lower_bound_int', cert.lower_bound_int),
        _field('upper_bound', cert.upper_bound),
    ]
    if cert.structure_check is not None:
        lines.append(_field('structure_check', cert.structure_check))
    if cert.displayed_form_matches is not None:
        lines.append(_field('displayed_form_matches', cert.displayed_form_matches))
    lines.append(_field('notes', list(cert.notes)))
    lines.append(_field('order', [str(v) for v in cert.order]))
    if cert.extra:
        lines += ["", "[extra]"] + [_field(k, v) for k, v in sorted(cert.extra.items())]
    return "\n".join(lines) + "\n"


def certificate_from_toml(text: str) -> HessianCertificate:
    """
    Read a certificate document back, every field exact.

    :raises ParseError: On malformed documents
    """
    data = load_document(text, 'certificate')
    try:
        spec = _family_from(data['family'])
        z = data['zero']
        res = data['result']
        matrix = RatMatrix([[_rational(x, 'zero matrix entry') for x in row] for row in z['matrix']])
        zero = ZeroPoint(
            spec=spec, matrix=matrix, case=z.get('case'), special_row=int(z['special_row']),
            special_value=_rational(z['special_value'], 'special_value'),
            c=z.get('c'), k=z.get('k'),
            d=_rational(z['d'], 'd') if 'd' in z else None,
            partition=tuple(z.get('partition', ())), column_order=tuple(z.get('column_order', ())),
        )
        return HessianCertificate(
            spec=spec, zero=zero,
            value=_rational(res['value'], 'value'),
            hessian_rows=int(res['hessian_rows']),
            hessian_cols=int(res['hessian_cols']),
            rank=int(res['rank']),
            lower_bound=_rational(res['lower_bound'], 'lower_bound'),
            lower_bound_int=int(res['lower_bound_int']),
            upper_bound=int(res['upper_bound']),
            order=tuple(_var(v) for v in res.get('order', ())),
            structure_check=res.get('structure_check'),
            displayed_form_matches=res.get('displayed_form_matches'),
            notes=list(res.get('notes', [])),
            extra=dict(data.get('extra', {})),
        )
    except KeyError as e:
        raise ParseError(f"Certificate document lacks {e}") from None
    except DetComplexError:
        raise
    except (ValueError, TypeError) as e:
        raise ParseError(f"Malformed certificate: {e}") from None


#
# Verification reports
#

def report_to_toml(report: VerificationReport) -> str:
    """The seed and bound always come first, so any failure can be replayed."""
    lines = _header('verification') + [
        _field('seed', report.seed),
        _field('trials', report.trials),
        _field('bound', report.bound),
        _field('passed', len(report.results) - len(report.failures)),
        _field('failed', len(report.failures)),
        _field('result', "pass" if report.passed else "fail"),
    ]
    witness = report.witness
    if witness is not None:
        lines += [
            "", "[witness]",
            _field('trial', witness.trial),
            _field('det', witness.det_value),
            _field('expected', witness.reference_value),
            "", "[witness.point]",
        ]
        lines += [f'"{v}" = {_value(x)}' for v, x in sorted(witness.point.items(), key=lambda kv: kv[0].sort_key)]
    return "\n".join(lines) + "\n"
