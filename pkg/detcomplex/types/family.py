from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Self

from ..core.errors import InvalidSpecError

__all__ = ['FamilyKind', 'FamilySpec']


class FamilyKind(str, Enum):
    """Supported polynomial families."""
    PERM = 'perm'
    HOPERM = 'hoperm'
    MPERM = 'mperm'


@dataclass(frozen=True, slots=True)
class FamilySpec:
    """
    Which polynomial family, and its shape

    ``perm`` is carried as a multipermanent with composition ``(1,...,1)``; ``kind`` only
    remembers how the caller asked for it.
    """
    kind: FamilyKind
    n: int
    composition: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSpecError(f"{self.kind.value}: n must be >= 1, got {self.n}")
        if self.kind is FamilyKind.HOPERM:
            if self.composition:
                raise InvalidSpecError("hoperm takes no composition")
            return
        if len(self.composition) != self.n:
            raise InvalidSpecError(f"Composition {self.composition} must have {self.n} parts")
        if any(m < 0 for m in self.composition):
            raise InvalidSpecError(f"Composition {self.composition} has negative parts")
        if any(m == 0 for m in self.composition):
            raise InvalidSpecError(f"Composition {self.composition} has zero parts; remove them first")
        if self.kind is FamilyKind.PERM and any(m != 1 for m in self.composition):
            raise InvalidSpecError("perm needs the all-ones composition")

    @classmethod
    def perm(cls, n: int) -> Self:
        return cls(FamilyKind.PERM, n, (1,) * max(n, 0))

    @classmethod
    def hoperm(cls, n: int) -> Self:
        return cls(FamilyKind.HOPERM, n)

    @classmethod
    def mperm(cls, composition: tuple[int, ...] | list[int]) -> Self:
        composition = tuple(composition)
        if not composition:
            raise InvalidSpecError("Empty composition")
        return cls(FamilyKind.MPERM, len(composition), composition)

    @classmethod
    def parse(cls, family: str, n: int | None = None, comp: str | None = None) -> Self:
        """
        Build a spec from CLI-style arguments.

        :param family: ``perm``, ``hoperm`` or ``mperm``
        :param n: Size for ``perm`` / ``hoperm``
        :param comp: Comma separated composition for ``mperm``
        :raises InvalidSpecError: If the combination is incomplete or malformed
        """
        try:
            kind = FamilyKind(family)
        except ValueError:
            raise InvalidSpecError(f"Unknown family '{family}' (use perm, hoperm or mperm)") from None
        if kind is FamilyKind.MPERM:
            if comp is None:
                raise InvalidSpecError("mperm needs --comp")
            try:
                parts = tuple(int(p) for p in comp.split(',') if p.strip())
            except ValueError:
                raise InvalidSpecError(f"Malformed composition '{comp}'") from None
            return cls.mperm(parts)
        if n is None:
            raise InvalidSpecError(f"{kind.value} needs --n")
        return cls.perm(n) if kind is FamilyKind.PERM else cls.hoperm(n)

    @property
    def is_hoperm(self) -> bool:
        return self.kind is FamilyKind.HOPERM

    @property
    def gamma(self) -> int:
        """Degree of the polynomial: ``n`` for hoperm, ``sum(m)`` otherwise."""
        return self.n if self.is_hoperm else sum(self.composition)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of an input matrix: ``n x 2n`` (hoperm) or ``gamma x n``."""
        return (self.n, 2 * self.n) if self.is_hoperm else (self.gamma, self.n)

    @property
    def num_vars(self) -> int:
        rows, cols = self.shape
        return rows * cols

    def is_partition(self) -> bool:
        return self.is_hoperm or list(self.composition) == sorted(self.composition, reverse=True)

    def all_parts_equal(self) -> bool:
        return len(set(self.composition)) <= 1

    def canonical(self) -> tuple[FamilySpec, tuple[int, ...]]:
        """
        Sort a composition into a partition.

        :return: The partition spec and ``order`` with ``order[p]`` the caller column (0-based)
                 of partition column ``p``; identity for hoperm
        """
        if self.is_hoperm:
            return self, tuple(range(2 * self.n))
        order = tuple(sorted(range(self.n), key=lambda j: (-self.composition[j], j)))
        parts = tuple(self.composition[j] for j in order)
        if self.kind is FamilyKind.PERM:
            return self, order
        return FamilySpec(FamilyKind.MPERM, self.n, parts), order

    def label(self) -> str:
        if self.is_hoperm:
            return f"hoperm_{self.n}"
        if self.kind is FamilyKind.PERM:
            return f"perm_{self.n}"
        return f"mperm_({','.join(map(str, self.composition))})"

    def __str__(self) -> str:
        return self.label()
