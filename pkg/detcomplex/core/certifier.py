"""
Lower bounds on determinantal complexity from the rank of a Hessian at a zero.

If ``f = det(F)`` with ``F`` an ``s x s`` affine matrix and ``f(y) = 0``, the Hessian of ``f`` at
``y`` is ``L T L^t`` with ``T`` the Hessian of ``det`` at the singular matrix ``F(y)``, whose rank
is at most ``2s``. So ``rank/2`` is a lower bound on ``s``. This module computes that rank at
the explicit zeros of :mod:`detcomplex.core.families` and compares the Hessians against their
closed-form block structure.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil, factorial, prod
from operator import attrgetter
from typing import Sequence

from . import log
from .errors import CertificationError, InvalidSpecError, SizeCapError
from .exact_algebra import jacobian_matrix, pushforward_hessian, symbolic_det
from .families import eval_recurrence, hessian_at, det_cofactor_hessian, var_order, zero_point
from ..types.affine import AffineMatrix, Point, VarId
from ..types.certificate import BlockCheck, ExpectedHessian, HessianCertificate, PushforwardCheck
from ..types.family import FamilySpec
from ..types.matrix import RatMatrix

__all__ = [
    'CERTIFY_HOPERM_MAX_N', 'CERTIFY_MPERM_MAX_VARS', 'expected_hessian_hoperm',
    'expected_hessian_mperm', 'expected_hessian', 'certify_lower_bound', 'upper_bound',
    'block_report', 'pushforward_identity', 'check_certificate',
]

CERTIFY_HOPERM_MAX_N = 5
CERTIFY_MPERM_MAX_VARS = 60


def _w(n: int) -> RatMatrix:
    """``U_n - I_n``"""
    return RatMatrix.from_function(n, n, lambda i, j: 0 if i == j else 1)


def _special_blocks(blocks: int, special: int, q: RatMatrix, r: RatMatrix) -> RatMatrix:
    """Zero diagonal blocks, ``q`` in block row and column ``special``, ``r`` elsewhere."""
    zero = RatMatrix.zeros(q.rows)
    return RatMatrix.from_blocks([
        [zero if bi == bj else (q if special in (bi, bj) else r) for bj in range(blocks)]
        for bi in range(blocks)
    ])


#
# Closed-form Hessians
#

def expected_hessian_hoperm(n: int) -> ExpectedHessian:
    """
    The Hessian of ``hoperm_n`` at its zero, assembled from blocks.

    ``H = [[C, C], [C, C]]`` where ``C = 2^(n-2) (n-3)!`` times the ``n x n`` block matrix with zero
    diagonal blocks, ``(n-2) W`` in the last block row and column and ``A`` elsewhere. ``A`` is
    ``-2`` off the diagonal, ``n-2`` in its last row and column, ``0`` on the diagonal, and
    ``W = U_n - I_n``.

    :raises InvalidSpecError: If ``n < 3``
    """
    if n < 3:
        raise InvalidSpecError(f"Closed-form hoperm Hessian needs n >= 3, got {n}")
    a = RatMatrix.from_function(n, n, lambda j, l: 0 if j == l else (n - 2 if n - 1 in (j, l) else -2))
    w = _w(n)
    scale = Fraction(2 ** (n - 2) * factorial(n - 3))
    c = _special_blocks(n, n - 1, w.scale(n - 2), a).scale(scale)
    h = RatMatrix.from_blocks([[c, c], [c, c]])
    return ExpectedHessian(
        spec=FamilySpec.hoperm(n), matrix=h,
        blocks={'A': a, 'W': w, '(n-2)W': w.scale(n - 2), 'C': c},
        scalars={'prefactor': scale}, special_row=n,
    )


def _check_partition(spec: FamilySpec) -> None:
    if spec.is_hoperm:
        raise InvalidSpecError("Expected a multipermanent")
    if not spec.is_partition():
        raise InvalidSpecError(f"Composition {spec.composition} is not sorted descending")
    if spec.gamma < 3:
        raise InvalidSpecError(f"Closed-form mperm Hessian needs gamma >= 3, got {spec.gamma}")


def _mperm_blocks(spec: FamilySpec, form: str) -> tuple[RatMatrix, RatMatrix, int, dict[str, Fraction]]:
    """``(Q, R, case, scalars)`` for a partition."""
    m = spec.composition
    n = spec.n
    gamma = spec.gamma
    denom = prod(factorial(x) for x in m)

    def profile(j: int, l: int) -> int:
        return m[j] * (m[j] - 1) if j == l else m[j] * m[l]

    if not spec.all_parts_equal():
        top = m[0]
        c = sum(1 for x in m if x == top)
        d = Fraction(gamma, c * top)
        k1 = Fraction(factorial(gamma - 2), denom)
        # Expanding along the special row produces (gamma-3)!, the display writes k1 for both blocks
        k_r = k1 if form == 'displayed' else Fraction(factorial(gamma - 3), denom)

        def r_entry(j: int, l: int) -> Fraction:
            if j < c and l < c:
                return 2 * (d - 1) * profile(j, l)
            if j >= c and l >= c:
                return -2 * profile(j, l)
            return (d - 2) * profile(j, l)

        q = RatMatrix.from_function(n, n, lambda j, l: k1 * profile(j, l))
        r = RatMatrix.from_function(n, n, lambda j, l: k_r * r_entry(j, l))
        return q, r, 1, {'k1': k1, 'k_R': k_r, 'c': Fraction(c), 'd': d}

    mm = m[0]
    k2 = Fraction(factorial(mm * n - 3), factorial(mm) ** n)

    def r_entry(j: int, l: int) -> int:
        if j == 0 and l == 0:
            return 2 * (mm - 1) * (n - 1)
        if j == 0 or l == 0:
            return mm * (n - 2)
        return -2 * (mm - 1) if j == l else -2 * mm

    q = RatMatrix.from_function(n, n, lambda j, l: k2 * (mm * n - 2) * (mm * (mm - 1) if j == l else mm * mm))
    r = RatMatrix.from_function(n, n, lambda j, l: k2 * mm * r_entry(j, l))
    return q, r, 2, {'k2': k2, 'm': Fraction(mm), 'c': Fraction(n), 'd': Fraction(1)}


def expected_hessian_mperm(spec: FamilySpec | Sequence[int], form: str = 'derived') -> ExpectedHessian:
    """
    The Hessian of ``mperm_m`` at its zero, assembled from the ``Q`` / ``R`` blocks.

    Block ``(i, i')`` is zero when ``i = i'``, ``Q`` when either index is the special row
    (``gamma`` when the parts are not all equal, ``1`` otherwise) and ``R`` elsewhere.

    :param spec: A partition (sorted descending) with ``gamma >= 3``
    :param form: ``derived`` scales the ``R`` block of the unequal case by ``(gamma-3)!/prod(m!)``,
                 the value obtained by expanding along the special row; ``displayed`` uses
                 ``k1 = (gamma-2)!/prod(m!)`` for it, which is off by a factor ``gamma - 2``
    :raises InvalidSpecError: If the composition is not a partition or ``gamma < 3``
    """
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec.mperm(spec)
    if form not in ('derived', 'displayed'):
        raise InvalidSpecError(f"Unknown Hessian form '{form}'")
    _check_partition(spec)
    q, r, case, scalars = _mperm_blocks(spec, form)
    special = spec.gamma if case == 1 else 1
    h = _special_blocks(spec.gamma, special - 1, q, r)
    notes: tuple[str, ...] = ()
    if case == 1 and spec.gamma > 3:
        notes = (f"displayed R block uses k1 = (gamma-2)!/prod(m!), expanding along row {spec.gamma} "
                 f"gives (gamma-3)!/prod(m!), a factor {spec.gamma - 2} smaller",)
    return ExpectedHessian(spec=spec, matrix=h, blocks={f'Q{case}': q, f'R{case}': r},
                           scalars=scalars, form=form, special_row=special, notes=notes)


def expected_hessian(spec: FamilySpec, form: str = 'derived') -> ExpectedHessian:
    """Dispatch on the family; multipermanents must already be partitions."""
    if spec.is_hoperm:
        return expected_hessian_hoperm(spec.n)
    return expected_hessian_mperm(spec, form)


def _relabel(expected: RatMatrix, spec: FamilySpec, order: tuple[int, ...]) -> RatMatrix:
    """Move a Hessian from partition column order to the caller's column order."""
    n = spec.n
    # position in the caller's row-major order of every partition variable
    target = [(k // n) * n + order[k % n] for k in range(expected.rows)]
    data = [[Fraction(0)] * expected.cols for _ in range(expected.rows)]
    for a in range(expected.rows):
        for b in range(expected.cols):
            data[target[a]][target[b]] = expected[a, b]
    return RatMatrix(data, cols=expected.cols)


#
# Bounds
#

def upper_bound(spec: FamilySpec, cross_check: bool = False) -> int:
    """
    Size of the cycle-cover representation: ``3^n`` for hoperm, ``prod(m_i + 1) - 1`` otherwise.

    :param cross_check: Also compile the representation and compare its size
    :raises CertificationError: If the compiled size differs
    """
    if spec.is_hoperm:
        bound = 3 ** spec.n
    else:
        bound = prod(m + 1 for m in spec.composition) - 1
    if cross_check:
        from .poset_detrep import build_for_family
        size = build_for_family(spec).size
        if size != bound:
            raise CertificationError(f"Compiled representation of {spec} has size {size}, expected {bound}")
    return bound


def _check_caps(spec: FamilySpec) -> None:
    if spec.is_hoperm:
        if spec.n < 3:
            raise InvalidSpecError(f"Certification of hoperm needs n >= 3, got {spec.n}")
        if spec.n > CERTIFY_HOPERM_MAX_N:
            raise SizeCapError(f"Certification of hoperm limited to n <= {CERTIFY_HOPERM_MAX_N}",
                               CERTIFY_HOPERM_MAX_N, spec.n)
        return
    if spec.gamma < 3:
        raise InvalidSpecError(f"Certification of mperm needs gamma >= 3, got {spec.gamma}")
    if spec.num_vars > CERTIFY_MPERM_MAX_VARS:
        raise SizeCapError(f"Certification of mperm limited to gamma*n <= {CERTIFY_MPERM_MAX_VARS}",
                           CERTIFY_MPERM_MAX_VARS, spec.num_vars)


def _structure(spec: FamilySpec, hessian: RatMatrix, cert: HessianCertificate) -> None:
    """Compare the Hessian with its closed forms and record the verdicts on ``cert``."""
    if spec.is_hoperm:
        cert.structure_check = hessian == expected_hessian_hoperm(spec.n).matrix
        # the positive-column block
        negative = range(spec.n ** 2, 2 * spec.n ** 2)
        cert.extra["rank_C"] = hessian.minor_matrix(negative, negative).rank()
        return
    partition, order = spec.canonical()
    derived = expected_hessian_mperm(partition, 'derived')
    displayed = expected_hessian_mperm(partition, 'displayed')
    cert.structure_check = hessian == _relabel(derived.matrix, spec, order)
    cert.displayed_form_matches = hessian == _relabel(displayed.matrix, spec, order)
    if not cert.displayed_form_matches:
        cert.notes.extend(derived.notes)
    if order != tuple(range(spec.n)):
        cert.notes.append(f"columns relabeled from partition {partition.composition}")


def certify_lower_bound(spec: FamilySpec, check_structure: bool = True) -> HessianCertificate:
    """
    Certify ``dc(f) >= ceil(rank/2)`` from the Hessian at the family's explicit zero.

    :param spec: hoperm with ``3 <= n <= 5``, or a multipermanent with ``gamma >= 3`` and at most
                 60 variables
    :param check_structure: Also compare the Hessian against its closed-form block structure
    :return: The certificate, carrying the computed rank
    :raises CertificationError: If the point is not a zero or the bound exceeds the upper bound
    :raises SizeCapError: Outside the size caps
    """
    _check_caps(spec)
    zero = zero_point(spec)
    value = eval_recurrence(spec, zero.matrix)
    if value != 0:
        raise CertificationError(f"{spec} does not vanish at its constructed zero (value {value})")

    order = tuple(var_order(spec))
    hessian = hessian_at(spec, zero.matrix, order)
    r = hessian.rank()
    lower = Fraction(r, 2)
    lower_int = ceil(lower)
    upper = upper_bound(spec)
    log.info("%s: Hessian %dx%d has rank %d", spec, hessian.rows, hessian.cols, r)
    if lower_int > upper:
        raise CertificationError(f"Lower bound {lower_int} exceeds upper bound {upper} for {spec}")

    cert = HessianCertificate(
        spec=spec, zero=zero, value=value, hessian_rows=hessian.rows, hessian_cols=hessian.cols,
        rank=r, lower_bound=lower, lower_bound_int=lower_int, upper_bound=upper, order=order,
    )
    if not spec.is_hoperm and spec.n < spec.gamma:
        cert.notes.append(f"Hessian is {hessian.rows}x{hessian.cols}, so this method certifies at most "
                          f"{Fraction(hessian.rows, 2)}, below gamma^2/2 = {Fraction(spec.gamma ** 2, 2)}")
    if check_structure:
        _structure(spec, hessian, cert)
        if cert.structure_check is False:
            log.warning("%s: Hessian differs from its closed-form block structure", spec)
    return cert


def check_certificate(cert: HessianCertificate) -> HessianCertificate:
    """
    Recompute a stored certificate from its zero point and compare.

    :return: The freshly computed certificate
    :raises CertificationError: If the variable order, value, Hessian shape, rank or bounds disagree
    """
    spec = cert.spec
    by_key = attrgetter('sort_key')
    if cert.order and sorted(cert.order, key=by_key) != sorted(var_order(spec), key=by_key):
        raise CertificationError(f"Certificate for {spec} does not check: order is not a permutation "
                                 "of the family variables")
    value = eval_recurrence(spec, cert.zero.matrix)
    hessian = hessian_at(spec, cert.zero.matrix, cert.order or None)
    r = hessian.rank()
    fresh = HessianCertificate(
        spec=spec, zero=cert.zero, value=value, hessian_rows=hessian.rows, hessian_cols=hessian.cols,
        rank=r, lower_bound=Fraction(r, 2), lower_bound_int=ceil(Fraction(r, 2)),
        upper_bound=upper_bound(spec), order=cert.order, structure_check=cert.structure_check,
        displayed_form_matches=cert.displayed_form_matches, notes=list(cert.notes),
    )
    mismatches = [
        name for name, stored, computed in (
            ('value', cert.value, fresh.value),
            ('rank', cert.rank, fresh.rank),
            ('lower_bound', cert.lower_bound, fresh.lower_bound),
            ('lower_bound_int', cert.lower_bound_int, fresh.lower_bound_int),
            ('upper_bound', cert.upper_bound, fresh.upper_bound),
            ('hessian_rows', cert.hessian_rows, fresh.hessian_rows),
            ('hessian_cols', cert.hessian_cols, fresh.hessian_cols),
        ) if stored != computed
    ]
    if value != 0:
        mismatches.append('zero')
    if mismatches:
        raise CertificationError(f"Certificate for {spec} does not check: {', '.join(mismatches)} differ")
    return fresh


#
# Supporting checks
#

def block_report(spec: FamilySpec) -> list[BlockCheck]:
    """
    Ranks and determinants of the blocks whose nonsingularity makes the Hessian nonsingular.

    hoperm: ``A``, ``(n-2)W``, ``C``. Unequal parts: ``Q1``, ``R1`` and the reduced 2x2 system of
    ``R1`` on vectors constant on the first ``c`` and on the remaining coordinates. Equal parts:
    ``Q2``, ``R2``, ``R2`` without its first row and column, and the 2x2 system in
    ``theta1 = v1``, ``theta2 = v2 + ... + vn``.
    """
    def check(name: str, matrix: RatMatrix) -> BlockCheck:
        return BlockCheck(name, matrix, matrix.rank(), matrix.det())

    if spec.is_hoperm:
        expected = expected_hessian_hoperm(spec.n)
        return [check(name, expected.blocks[name]) for name in ('A', '(n-2)W', 'C')]

    partition, _ = spec.canonical()
    expected = expected_hessian_mperm(partition)
    m = partition.composition
    n = partition.n
    if 'Q1' in expected.blocks:
        c = int(expected.scalars['c'])
        d = expected.scalars['d']
        head = sum(m[:c])
        tail = sum(m[c:])
        system = RatMatrix([[(2 * d - 2) * (head - 1), (d - 2) * tail],
                            [(d - 2) * head, -2 * (tail - 1)]])
        return [check('Q1', expected.blocks['Q1']), check('R1', expected.blocks['R1']),
                check('system', system)]
    mm = m[0]
    r2 = expected.blocks['R2']
    theta = RatMatrix([[2 * (mm - 1) * (n - 1), mm * (n - 2)],
                       [(n - 1) * mm * (n - 2), -2 * (mm - 1) - 2 * mm * (n - 2)]])
    blocks = [check('Q2', expected.blocks['Q2']), check('R2', r2)]
    if n > 1:
        blocks.append(check('R0', r2.minor_matrix((0,), (0,))))
    blocks.append(check('theta', theta))
    return blocks


def pushforward_identity(f: AffineMatrix, y: Point, order: Sequence[VarId] | None = None) -> PushforwardCheck:
    """
    Check the chain rule behind the rank bound at one point.

    :param f: An affine matrix of size at most 6
    :param y: A point assigning every variable of ``f``
    :param order: Variable order for the Hessians, by default the variables of ``f``
    :return: Both Hessians of ``det(f)`` at ``y`` and the value there
    """
    order = list(order) if order is not None else f.variables()
    poly = symbolic_det(f)
    firsts = [poly.derivative(v) for v in order]
    direct = RatMatrix(
        ((firsts[a].derivative(order[b]).evaluate(y) for b in range(len(order))) for a in range(len(order))),
        cols=len(order),
    )
    at_y = f.evaluate(y)
    pushed = pushforward_hessian(jacobian_matrix(f, order), det_cofactor_hessian(at_y))
    return PushforwardCheck(direct=direct, pushed=pushed, value=at_y.det())
