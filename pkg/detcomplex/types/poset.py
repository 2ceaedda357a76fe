from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Self

from .affine import AffineForm

__all__ = ['Element', 'Cover', 'GradedLabeledPoset', 'PosetReport']


@dataclass(frozen=True, slots=True)
class Element:
    """A poset element with its rank"""
    id: str
    rank: int


@dataclass(frozen=True, slots=True)
class Cover:
    """Cover relation ``lower < upper`` labeled by an affine form"""
    lower: str
    upper: str
    label: AffineForm


@dataclass(frozen=True, slots=True)
class GradedLabeledPoset:
    """
    A graded poset given by its Hasse diagram with labeled edges

    ``rank`` is the declared rank ``d``; ``None`` means "the largest element rank". Nothing is
    checked on construction, :func:`detcomplex.core.poset_detrep.validate_poset` does that.
    """
    elements: tuple[Element, ...]
    covers: tuple[Cover, ...]
    rank: int | None = None
    name: str = ''

    @classmethod
    def build(cls, elements: Iterable[Element | tuple[str, int]], covers: Iterable[Cover | tuple],
              rank: int | None = None, name: str = '') -> Self:
        elems = tuple(e if isinstance(e, Element) else Element(*e) for e in elements)
        cvs = tuple(c if isinstance(c, Cover) else Cover(*c) for c in covers)
        return cls(elems, cvs, rank, name)

    @property
    def declared_rank(self) -> int:
        if self.rank is not None:
            return self.rank
        return max((e.rank for e in self.elements), default=0)

    def lower_covers(self) -> dict[str, list[Cover]]:
        """Incoming covers per element id, in declaration order."""
        result: dict[str, list[Cover]] = {e.id: [] for e in self.elements}
        for c in self.covers:
            result.setdefault(c.upper, []).append(c)
        return result

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(slots=True)
class PosetReport:
    """Result of validating a poset"""
    valid: bool
    element_count: int
    rank: int
    minimum: str | None = None
    unique_maximum: str | None = None
    maximal: list[str] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    @property
    def has_unique_maximum(self) -> bool:
        return self.unique_maximum is not None
