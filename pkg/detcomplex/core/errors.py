"""
Exception hierarchy of detcomplex.

Every error raised on purpose by the library derives from :class:`DetComplexError`, so callers
(and the CLI error handler) can tell usage problems from bugs.
"""
from __future__ import annotations

from typing import Any

__all__ = [
    'DetComplexError', 'ShapeError', 'MissingAssignmentError', 'SizeCapError', 'InvalidSpecError',
    'PosetError', 'ParseError', 'VerificationError', 'CertificationError', 'ConfigError',
]


class DetComplexError(Exception):
    """Base exception for all detcomplex errors."""
    pass


class ShapeError(DetComplexError, ValueError):
    """Matrix or point shape does not fit the operation."""
    pass


class MissingAssignmentError(DetComplexError, KeyError):
    """A variable of an affine form has no value at the evaluation point."""

    def __init__(self, var: Any):
        super().__init__(f"No value assigned to variable {var}")
        self.var = var

    def __str__(self) -> str:
        # KeyError quotes its argument, we want the plain message
        return str(self.args[0])


class SizeCapError(DetComplexError, ValueError):
    """A computation would exceed one of the explicit size caps."""

    def __init__(self, message: str, limit: int, value: int):
        super().__init__(message)
        self.limit = limit
        self.value = value


class InvalidSpecError(DetComplexError, ValueError):
    """Invalid family specification (kind, n, composition)."""
    pass


class PosetError(DetComplexError, ValueError):
    """The poset violates the hypotheses of the chain construction."""

    def __init__(self, message: str, problems: list[str] | None = None):
        super().__init__(message)
        self.problems = problems or []


class ParseError(DetComplexError, ValueError):
    """Syntax error in a poset file, matrix file or document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._format())

    def _format(self) -> str:
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"


class VerificationError(DetComplexError):
    """A determinantal representation failed randomized verification."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class CertificationError(DetComplexError):
    """Internal consistency failure while building or checking a certificate."""
    pass


class ConfigError(DetComplexError):
    """Invalid configuration file."""
    pass
