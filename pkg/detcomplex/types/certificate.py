from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .affine import VarId
from .family import FamilySpec
from .matrix import RatMatrix

__all__ = ['ZeroPoint', 'ExpectedHessian', 'HessianCertificate', 'BlockCheck', 'PushforwardCheck']


@dataclass(frozen=True, slots=True)
class ZeroPoint:
    """
    An explicit zero of a family together with how it was constructed

    For hoperm ``case`` is ``None``. For multipermanents ``case`` is 1 (parts not all equal, the
    last row carries ``1 - gamma/(c*max m)`` in the columns of maximal parts) or 2 (all parts
    equal, entry ``1 - n`` at the top left).
    """
    spec: FamilySpec
    matrix: RatMatrix
    case: int | None
    special_row: int
    special_value: Fraction
    c: int | None = None
    k: int | None = None
    d: Fraction | None = None
    partition: tuple[int, ...] = ()
    column_order: tuple[int, ...] = ()


@dataclass(frozen=True, slots=True)
class ExpectedHessian:
    """
    A Hessian assembled from closed-form block formulas

    ``blocks`` names the building blocks (``C``, ``A``, ``W`` for hoperm; ``Q``, ``R`` for
    multipermanents), ``scalars`` the prefactors and parameters used, ``notes`` any known
    difference between the assembled form and the alternative form.
    """
    spec: FamilySpec
    matrix: RatMatrix
    blocks: dict[str, RatMatrix]
    scalars: dict[str, Fraction]
    form: str = 'derived'
    special_row: int | None = None
    notes: tuple[str, ...] = ()


@dataclass(slots=True)
class HessianCertificate:
    """
    Rank of the Hessian at an explicit zero, and the lower bound on determinantal complexity
    it certifies
    """
    spec: FamilySpec
    zero: ZeroPoint
    value: Fraction
    hessian_rows: int
    hessian_cols: int
    rank: int
    lower_bound: Fraction
    lower_bound_int: int
    upper_bound: int
    order: tuple[VarId, ...]
    structure_check: bool | None = None
    displayed_form_matches: bool | None = None
    notes: list[str] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.value == 0 and self.structure_check is not False


@dataclass(frozen=True, slots=True)
class BlockCheck:
    """Rank and determinant of one building block of a closed-form Hessian"""
    name: str
    matrix: RatMatrix
    rank: int
    det: Fraction

    @property
    def nonsingular(self) -> bool:
        return self.det != 0


@dataclass(frozen=True, slots=True)
class PushforwardCheck:
    """
    The Hessian of ``det(F(x))`` at ``y`` computed twice: by differentiating the expanded
    polynomial, and as ``L T L^t`` with ``T`` the Hessian of ``det`` at ``F(y)``
    """
    direct: RatMatrix
    pushed: RatMatrix
    value: Fraction

    @property
    def matches(self) -> bool:
        return self.direct == self.pushed
