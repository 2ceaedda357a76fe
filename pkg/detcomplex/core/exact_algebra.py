"""
Exact linear algebra over the rationals.

Determinant, rank, evaluation of affine matrices, the ``L H L^t`` pushforward of a Hessian and
the off-diagonal block matrix whose invertibility drives the lower bound arguments.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ShapeError
from . import log
from ..types.affine import AffineMatrix, Point, VarId
from ..types.matrix import RatMatrix
from ..types.polynomial import Polynomial

__all__ = [
    'det', 'rank', 'eval_affine_matrix', 'pushforward_hessian', 'build_off_diagonal',
    'cofactor_det', 'symbolic_det', 'jacobian_matrix', 'SYMBOLIC_DET_MAX_SIZE',
]

# Cofactor expansion is factorial, keep it at desk scale
SYMBOLIC_DET_MAX_SIZE = 6


def det(m: RatMatrix) -> Fraction:
    """
    Exact determinant by fraction-free (Bareiss) elimination.

    :param m: A square matrix
    :return: The determinant
    :raises ShapeError: If ``m`` is not square
    """
    return m.det()


def rank(m: RatMatrix) -> int:
    """Exact rank over the rationals."""
    return m.rank()


def eval_affine_matrix(f: AffineMatrix, point: Point) -> RatMatrix:
    """
    Evaluate every entry of ``f`` at ``point``.

    :raises MissingAssignmentError: Naming the first unassigned variable met
    """
    return f.evaluate(point)


def pushforward_hessian(lin: RatMatrix, hessian: RatMatrix) -> RatMatrix:
    """
    Return ``L H L^t``.

    :param lin: The ``m x n^2`` matrix ``L`` of partial derivatives of an affine map
    :param hessian: The ``n^2 x n^2`` Hessian of ``det_n`` at the image point
    :raises ShapeError: If the inner dimensions disagree
    """
    if not hessian.is_square():
        raise ShapeError(f"Hessian must be square, got {hessian.rows}x{hessian.cols}")
    if lin.cols != hessian.rows:
        raise ShapeError(f"L has {lin.cols} columns but the Hessian has {hessian.rows} rows")
    return lin.mult(hessian).mult(lin.transpose())


def build_off_diagonal(q: RatMatrix, r: RatMatrix, b: int) -> RatMatrix:
    """
    The ``(ab) x (ab)`` block matrix with zero diagonal blocks, ``Q`` in the first block row and
    block column, and ``R`` in every other off-diagonal position.

    It is invertible whenever ``Q`` and ``R`` are.

    :param q: Square ``a x a`` block
    :param r: Square ``a x a`` block
    :param b: Number of block rows, at least 2
    :raises ShapeError: If the blocks are not square of equal size or ``b < 2``
    """
    if not q.is_square() or q.shape != r.shape:
        raise ShapeError(f"Q and R must be square of equal size, got {q.shape} and {r.shape}")
    if b < 2:
        raise ShapeError(f"Need at least 2 block rows, got {b}")
    zero = RatMatrix.zeros(q.rows)
    blocks = [
        [zero if bi == bj else (q if bi == 0 or bj == 0 else r) for bj in range(b)]
        for bi in range(b)
    ]
    return RatMatrix.from_blocks(blocks)


def _cofactor_expand(rows: Sequence[Sequence], cols: tuple[int, ...], zero, mul):
    if not cols:
        return None
    first, rest = rows[0], rows[1:]
    total = zero
    for pos, c in enumerate(cols):
        entry = first[c]
        if entry == 0:
            continue
        minor = _cofactor_expand(rest, cols[:pos] + cols[pos + 1:], zero, mul)
        term = entry if minor is None else mul(entry, minor)
        total = total + term if pos % 2 == 0 else total - term
    return total


def cofactor_det(m: RatMatrix) -> Fraction:
    """Determinant by Laplace expansion along the first row; a reference for small matrices."""
    if not m.is_square():
        raise ShapeError(f"Determinant needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows == 0:
        return Fraction(1)
    return _cofactor_expand(m.data, tuple(range(m.cols)), Fraction(0), lambda a, b: a * b)


def symbolic_det(f: AffineMatrix) -> Polynomial:
    """
    Expand ``det(f)`` into a sparse polynomial by cofactor expansion.

    :raises ShapeError: If the matrix is larger than :data:`SYMBOLIC_DET_MAX_SIZE`
    """
    if f.size > SYMBOLIC_DET_MAX_SIZE:
        raise ShapeError(f"Symbolic determinant limited to size {SYMBOLIC_DET_MAX_SIZE}, got {f.size}")
    if f.size == 0:
        return Polynomial.const(1)
    rows = [[Polynomial.from_affine(e) for e in r] for r in f.entries]
    result = _cofactor_expand(rows, tuple(range(f.size)), Polynomial(), lambda a, b: a * b)
    log.debug("symbolic determinant of size %d has %d terms", f.size, len(result.terms))
    return result


def jacobian_matrix(f: AffineMatrix, order: Sequence[VarId]) -> RatMatrix:
    """
    The constant matrix ``L`` with ``L[h][(i,j)] = d f_ij / d x_h``.

    Columns run over the entries of ``f`` row-major, rows over ``order``.
    """
    return RatMatrix(
        ((f.entries[i][j].coefficient(var) for i in range(f.size) for j in range(f.size)) for var in order),
        cols=f.size * f.size,
    )
