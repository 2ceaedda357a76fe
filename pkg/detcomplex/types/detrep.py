from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affine import AffineMatrix, VarId
from .family import FamilySpec

__all__ = ['DetRep', 'TrialResult', 'VerificationReport']


@dataclass(frozen=True, slots=True)
class DetRep:
    """
    A determinantal representation ``f = det(matrix)``

    :ivar matrix: Weighted adjacency matrix of the cycle-cover graph
    :ivar chain_degree: Rank ``d`` of the poset it was compiled from (before any top adjunction)
    :ivar cycle_length: Length of the root cycles, ``d`` or ``d + 1`` with an adjoined top
    :ivar sign_fixed: Whether row 1 was negated to turn ``-f`` into ``f``
    :ivar top_adjoined: Whether a formal maximum was added
    :ivar vertices: Element id of every row, ``v0`` first
    """
    matrix: AffineMatrix
    chain_degree: int
    cycle_length: int
    sign_fixed: bool
    top_adjoined: bool = False
    vertices: tuple[str, ...] = ()
    spec: FamilySpec | None = None
    source: str = ''

    @property
    def size(self) -> int:
        return self.matrix.size


@dataclass(frozen=True, slots=True)
class TrialResult:
    """One random evaluation of a verification run"""
    trial: int
    det_value: Fraction
    reference_value: Fraction
    point: dict[VarId, Fraction] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.det_value == self.reference_value


@dataclass(slots=True)
class VerificationReport:
    """Outcome of a randomized identity check; ``seed`` and ``bound`` make it replayable"""
    seed: int
    trials: int
    bound: int
    results: list[TrialResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results) and len(self.results) == self.trials

    @property
    def failures(self) -> list[TrialResult]:
        return [r for r in self.results if not r.passed]

    @property
    def witness(self) -> TrialResult | None:
        """First failing trial, if any."""
        failures = self.failures
        return failures[0] if failures else None
