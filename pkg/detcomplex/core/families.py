"""
Permanent-like families: evaluation, special values, explicit zeros and exact derivatives.

Three families are supported (see :class:`~detcomplex.types.family.FamilySpec`):

* ``hoperm_n`` on the ``n x 2n`` matrix with columns ``1..n, -1..-n``: the sum over all
  permutations and sign patterns of ``prod_i x[i, e_i*s(i)]``.
* ``mperm_m`` on the ``gamma x n`` matrix: the sum over maps ``s: [gamma] -> [n]`` with
  ``|s^-1(j)| = m_j`` of ``prod_i x[i, s(i)]``.
* ``perm_n``, which is ``mperm_(1,...,1)``.

Every variable has degree at most one in every family, which makes the first and second partial
derivatives evaluations of smaller instances on reduced matrices.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial, prod
from typing import Iterator, Sequence

from . import log
from .errors import InvalidSpecError, MissingAssignmentError, ShapeError, SizeCapError
from ..types.affine import Point, VarId
from ..types.certificate import ZeroPoint
from ..types.family import FamilySpec
from ..types.matrix import RatMatrix
from ..types.polynomial import Polynomial

__all__ = [
    'BRUTE_HOPERM_MAX_N', 'BRUTE_MPERM_MAX_GAMMA', 'REC_HOPERM_MAX_N', 'REC_MPERM_MAX_GAMMA',
    'var_order', 'var_index', 'matrix_index', 'point_from_matrix', 'matrix_from_point',
    'eval_brute', 'eval_recurrence', 'evaluate', 'ones_value', 'zero_point', 'partial',
    'second_partial', 'hessian_at', 'det_cofactor_hessian', 'family_polynomial',
    'distinct_permutations', 'permanent',
]

BRUTE_HOPERM_MAX_N = 8
BRUTE_MPERM_MAX_GAMMA = 12
REC_HOPERM_MAX_N = 12
REC_MPERM_MAX_GAMMA = 20


#
# Variables and shapes
#

def var_order(spec: FamilySpec) -> list[VarId]:
    """
    The variable order used to index Hessians.

    hoperm: ``x[1,1..n], ..., x[n,1..n]`` then the same sweep over ``-1..-n``.
    mperm: row-major over ``[gamma] x [n]``.
    """
    rows, cols = spec.shape
    if spec.is_hoperm:
        n = spec.n
        return ([VarId(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
                + [VarId(i, -j) for i in range(1, n + 1) for j in range(1, n + 1)])
    return [VarId(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]


def matrix_index(spec: FamilySpec, var: VarId) -> tuple[int, int]:
    """
    0-based ``(row, column)`` of a variable in the family's point matrix.

    :raises ShapeError: If the variable does not belong to the family
    """
    rows, cols = spec.shape
    if not 1 <= var.row <= rows:
        raise ShapeError(f"{var} outside the rows 1..{rows} of {spec}")
    if spec.is_hoperm:
        if not 1 <= abs(var.col) <= spec.n:
            raise ShapeError(f"{var} outside the columns +-1..+-{spec.n} of {spec}")
        col = var.col - 1 if var.col > 0 else spec.n - var.col - 1
        return var.row - 1, col
    if not 1 <= var.col <= cols:
        raise ShapeError(f"{var} outside the columns 1..{cols} of {spec}")
    return var.row - 1, var.col - 1


def var_index(spec: FamilySpec, var: VarId) -> int:
    """Position of ``var`` in :func:`var_order`."""
    i, c = matrix_index(spec, var)
    if spec.is_hoperm:
        n = spec.n
        return (n * n if c >= n else 0) + i * n + c % n
    return i * spec.n + c


def point_from_matrix(spec: FamilySpec, x: RatMatrix) -> dict[VarId, Fraction]:
    """Turn a point matrix into a variable assignment."""
    _check_shape(spec, x)
    return {v: x[matrix_index(spec, v)] for v in var_order(spec)}


def matrix_from_point(spec: FamilySpec, point: Point) -> RatMatrix:
    """
    Inverse of :func:`point_from_matrix`.

    :raises MissingAssignmentError: If a family variable has no value
    """
    rows, cols = spec.shape
    data = [[Fraction(0)] * cols for _ in range(rows)]
    for v in var_order(spec):
        if v not in point:
            raise MissingAssignmentError(v)
        i, c = matrix_index(spec, v)
        data[i][c] = point[v]
    return RatMatrix(data, cols=cols)


def _check_shape(spec: FamilySpec, x: RatMatrix) -> None:
    if x.shape != spec.shape:
        rows, cols = spec.shape
        raise ShapeError(f"{spec} needs a {rows}x{cols} matrix, got {x.rows}x{x.cols}")


#
# Enumeration helpers
#

def distinct_permutations(word: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """
    All distinct rearrangements of ``word`` in lexicographic order (next-permutation walk).
    """
    a = sorted(word)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def permanent(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """
    Permanent of a square matrix by row expansion with a bitmask of used columns.

    Row ``popcount(mask)`` is expanded next, so each state is computed once.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    full = (1 << n) - 1
    # value[mask] = permanent of the last (n - popcount(mask)) rows on the unused columns
    value: dict[int, Fraction] = {full: Fraction(1)}
    for mask in range(full - 1, -1, -1):
        row = rows[mask.bit_count()]
        total = Fraction(0)
        for j in range(n):
            if not mask & (1 << j) and row[j] != 0:
                total += row[j] * value[mask | (1 << j)]
        value[mask] = total
    return value[0]


def _mperm_rows(rows: Sequence[Sequence[Fraction]], comp: tuple[int, ...]) -> Fraction:
    """
    Multipermanent of ``rows`` for a composition that may contain zero or negative parts.

    Expands along the topmost remaining row with the residual composition as memo key.
    """
    if any(m < 0 for m in comp):
        return Fraction(0)
    gamma = len(rows)
    if sum(comp) != gamma:
        raise ShapeError(f"Composition {comp} does not sum to the row count {gamma}")
    memo: dict[tuple[int, ...], Fraction] = {}

    def value(res: tuple[int, ...]) -> Fraction:
        left = sum(res)
        if left == 0:
            return Fraction(1)
        if res in memo:
            return memo[res]
        row = rows[gamma - left]
        total = Fraction(0)
        for j, mj in enumerate(res):
            if mj > 0 and row[j] != 0:
                total += row[j] * value(res[:j] + (mj - 1,) + res[j + 1:])
        memo[res] = total
        return total

    return value(comp)


def _pair_sums(x: RatMatrix, n: int) -> list[list[Fraction]]:
    """``S[i][j] = x[i,j] + x[i,-j]``; hoperm is the permanent of ``S``."""
    return [[x[i, j] + x[i, n + j] for j in range(n)] for i in range(x.rows)]


def _drop(rows: Sequence[Sequence[Fraction]], drop_rows: set[int], drop_cols: set[int]) -> list[list[Fraction]]:
    return [[v for j, v in enumerate(r) if j not in drop_cols] for i, r in enumerate(rows) if i not in drop_rows]


#
# Evaluation
#

def eval_brute(spec: FamilySpec, x: RatMatrix) -> Fraction:
    """
    Evaluate by enumerating every monomial of the definition.

    :raises ShapeError: If ``x`` does not have the family's shape
    :raises SizeCapError: If hoperm ``n > 8`` or mperm ``gamma > 12``
    """
    _check_shape(spec, x)
    if spec.is_hoperm:
        n = spec.n
        if n > BRUTE_HOPERM_MAX_N:
            raise SizeCapError(f"Brute force hoperm limited to n <= {BRUTE_HOPERM_MAX_N}",
                               BRUTE_HOPERM_MAX_N, n)
        total = Fraction(0)
        for sigma in permutations(range(n)):
            for signs in product((0, n), repeat=n):
                total += prod((x[i, sigma[i] + signs[i]] for i in range(n)), start=Fraction(1))
        return total

    gamma = spec.gamma
    if gamma > BRUTE_MPERM_MAX_GAMMA:
        raise SizeCapError(f"Brute force mperm limited to gamma <= {BRUTE_MPERM_MAX_GAMMA}",
                           BRUTE_MPERM_MAX_GAMMA, gamma)
    word = [j for j, mj in enumerate(spec.composition) for _ in range(mj)]
    total = Fraction(0)
    for sigma in distinct_permutations(word):
        total += prod((x[i, sigma[i]] for i in range(gamma)), start=Fraction(1))
    return total


def eval_recurrence(spec: FamilySpec, x: RatMatrix) -> Fraction:
    """
    Evaluate by row expansion with memoization over the residual state.

    :raises ShapeError: If ``x`` does not have the family's shape
    :raises SizeCapError: If hoperm ``n > 12`` or mperm ``gamma > 20``
    """
    _check_shape(spec, x)
    if spec.is_hoperm:
        if spec.n > REC_HOPERM_MAX_N:
            raise SizeCapError(f"Recurrence hoperm limited to n <= {REC_HOPERM_MAX_N}",
                               REC_HOPERM_MAX_N, spec.n)
        return permanent(_pair_sums(x, spec.n))
    if spec.gamma > REC_MPERM_MAX_GAMMA:
        raise SizeCapError(f"Recurrence mperm limited to gamma <= {REC_MPERM_MAX_GAMMA}",
                           REC_MPERM_MAX_GAMMA, spec.gamma)
    return _mperm_rows(x.data, spec.composition)


def evaluate(spec: FamilySpec, x: RatMatrix, method: str = 'rec') -> Fraction:
    """Dispatch to :func:`eval_brute` (``method='brute'``) or :func:`eval_recurrence`."""
    if method == 'brute':
        return eval_brute(spec, x)
    if method == 'rec':
        return eval_recurrence(spec, x)
    raise InvalidSpecError(f"Unknown evaluation method '{method}'")


def family_polynomial(spec: FamilySpec) -> Polynomial:
    """The family as a sparse polynomial, enumerated term by term (brute force caps apply)."""
    if spec.is_hoperm and spec.n > BRUTE_HOPERM_MAX_N:
        raise SizeCapError(f"Expanding hoperm limited to n <= {BRUTE_HOPERM_MAX_N}",
                           BRUTE_HOPERM_MAX_N, spec.n)
    if not spec.is_hoperm and spec.gamma > BRUTE_MPERM_MAX_GAMMA:
        raise SizeCapError(f"Expanding mperm limited to gamma <= {BRUTE_MPERM_MAX_GAMMA}",
                           BRUTE_MPERM_MAX_GAMMA, spec.gamma)
    terms = []
    if spec.is_hoperm:
        n = spec.n
        for sigma in permutations(range(1, n + 1)):
            for signs in product((1, -1), repeat=n):
                mono = tuple(sorted(((VarId(i + 1, signs[i] * sigma[i]), 1) for i in range(n)),
                                    key=lambda item: item[0].sort_key))
                terms.append((mono, 1))
    else:
        word = [j for j, mj in enumerate(spec.composition, start=1) for _ in range(mj)]
        for sigma in distinct_permutations(word):
            mono = tuple((VarId(i + 1, sigma[i]), 1) for i in range(len(sigma)))
            terms.append((mono, 1))
    return Polynomial(terms)


#
# Special values
#

def ones_value(spec: FamilySpec) -> Fraction:
    """Value at the all-ones matrix: ``2^n n!`` or the multinomial ``gamma!/prod(m_j!)``."""
    if spec.is_hoperm:
        return Fraction(2 ** spec.n * factorial(spec.n))
    return Fraction(factorial(spec.gamma), prod(factorial(m) for m in spec.composition))


def zero_point(spec: FamilySpec) -> ZeroPoint:
    """
    An explicit zero of the family.

    * hoperm: all ones except ``x[n,n] = 1 - 2n``.
    * mperm, parts not all equal: all ones except ``1 - gamma/(c*max m)`` in the last row at
      every column of a maximal part (``c`` of them).
    * mperm, all parts equal (this includes perm): all ones except ``1 - n`` at the top left.
    """
    rows, cols = spec.shape
    ones = RatMatrix.ones(rows, cols)
    if spec.is_hoperm:
        n = spec.n
        value = Fraction(1 - 2 * n)
        return ZeroPoint(spec=spec, matrix=ones.replace(n - 1, n - 1, value), case=None,
                         special_row=n, special_value=value)

    partition, order = spec.canonical()
    comp = spec.composition
    gamma = spec.gamma
    if not spec.all_parts_equal():
        top = max(comp)
        columns = [j for j, mj in enumerate(comp) if mj == top]
        c = len(columns)
        value = 1 - Fraction(gamma, c * top)
        data = ones.to_lists()
        for j in columns:
            data[gamma - 1][j] = value
        return ZeroPoint(spec=spec, matrix=RatMatrix(data), case=1, special_row=gamma,
                         special_value=value, c=c, k=columns[0] + 1, d=Fraction(gamma, c * top),
                         partition=partition.composition, column_order=order)

    n = spec.n
    value = Fraction(1 - n)
    return ZeroPoint(spec=spec, matrix=ones.replace(0, 0, value), case=2, special_row=1,
                     special_value=value, c=n, k=1, d=Fraction(1),
                     partition=partition.composition, column_order=order)


#
# Derivatives
#

def partial(spec: FamilySpec, x: RatMatrix, v: VarId) -> Fraction:
    """
    First partial derivative at ``x``.

    mperm: ``mperm_{m - e_j}`` of ``x`` without row ``i``;
    hoperm: ``hoperm_{n-1}`` of ``x`` without row ``i`` and columns ``+-j``.
    """
    _check_shape(spec, x)
    i, c = matrix_index(spec, v)
    if spec.is_hoperm:
        return permanent(_drop(_pair_sums(x, spec.n), {i}, {c % spec.n}))
    comp = list(spec.composition)
    comp[c] -= 1
    return _mperm_rows(_drop(x.data, {i}, set()), tuple(comp))


def second_partial(spec: FamilySpec, x: RatMatrix, v: VarId, w: VarId) -> Fraction:
    """
    Second partial derivative at ``x``, symmetric in ``v`` and ``w``.

    Zero when both variables share a row (and, for hoperm, when ``|j| = |l|``); otherwise the
    family of size two smaller on the doubly reduced matrix.
    """
    _check_shape(spec, x)
    i, c = matrix_index(spec, v)
    k, d = matrix_index(spec, w)
    if i == k:
        return Fraction(0)
    if spec.is_hoperm:
        n = spec.n
        if c % n == d % n:
            return Fraction(0)
        return permanent(_drop(_pair_sums(x, n), {i, k}, {c % n, d % n}))
    comp = list(spec.composition)
    comp[c] -= 1
    comp[d] -= 1
    return _mperm_rows(_drop(x.data, {i, k}, set()), tuple(comp))


def hessian_at(spec: FamilySpec, x: RatMatrix, order: Sequence[VarId] | None = None) -> RatMatrix:
    """
    The Hessian of the family at ``x``.

    :param spec: Family
    :param x: Point matrix
    :param order: Row/column order of the variables, :func:`var_order` by default
    :return: The symmetric ``N x N`` matrix of second partials
    """
    _check_shape(spec, x)
    order = list(order) if order is not None else var_order(spec)
    size = len(order)
    data = [[Fraction(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            value = second_partial(spec, x, order[a], order[b])
            data[a][b] = value
            data[b][a] = value
    log.debug("Hessian of %s at point: %dx%d", spec, size, size)
    return RatMatrix(data, cols=size)


def det_cofactor_hessian(a: RatMatrix) -> RatMatrix:
    """
    Hessian of ``det_n`` at ``a``.

    Entry ``((i,j),(k,l))`` (row-major pairs) is 0 when ``i = k`` or ``j = l``, otherwise
    ``(-1)^(i+j+k+l) sgn(k-i) sgn(l-j)`` times the minor of ``a`` without rows ``i, k`` and
    columns ``j, l``.

    :raises ShapeError: If ``a`` is not square
    """
    if not a.is_square():
        raise ShapeError(f"det Hessian needs a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    size = n * n
    data = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            for k in range(i + 1, n):
                for l in range(n):
                    if l == j:
                        continue
                    sign = (-1) ** (i + j + k + l) * (1 if l > j else -1)
                    value = sign * a.minor_matrix((i, k), (j, l)).det()
                    data[i * n + j][k * n + l] = value
                    data[k * n + l][i * n + j] = value
    return RatMatrix(data, cols=size)
