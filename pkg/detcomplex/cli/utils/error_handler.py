"""Centralized error handling for CLI commands."""

from rich.console import Console
from rich.markup import escape
from typer import Exit

from ...core.errors import (
    CertificationError, ConfigError, DetComplexError, InvalidSpecError, MissingAssignmentError,
    ParseError, PosetError, ShapeError, SizeCapError, VerificationError,
)

__all__ = ['ErrorHandler', 'EXIT_FAILURE', 'EXIT_USAGE']

# A check ran and failed
EXIT_FAILURE = 1
# The input could not be used
EXIT_USAGE = 2


class ErrorHandler:
    """
    Context manager turning library errors into a red message on stderr and an exit code.

    Usage and input errors exit with 2, failed verifications and certifications with 1.
    Anything else propagates.
    """

    def __init__(self, console: Console | None = None):
        if not console:
            console = Console(stderr=True)
        self.console = console

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type is None:
            return False

        if issubclass(exc_type, (VerificationError, CertificationError)):
            self._handle_failure(exc_value)
            code = EXIT_FAILURE
        elif issubclass(exc_type, ParseError):
            self.console.print(f"[red]Parse error:[/red] {escape(str(exc_value))}", highlight=False)
            code = EXIT_USAGE
        elif issubclass(exc_type, PosetError):
            self._handle_poset_error(exc_value)
            code = EXIT_USAGE
        elif issubclass(exc_type, SizeCapError):
            self.console.print(f"[red]Too large:[/red] {escape(str(exc_value))}", highlight=False)
            self.console.print(f"[yellow]Limit:[/yellow] {exc_value.limit}, requested {exc_value.value}. "
                               "Run [cyan]detcomplex limits[/cyan] to list the caps.")
            code = EXIT_USAGE
        elif issubclass(exc_type, MissingAssignmentError):
            self.console.print(f"[red]Missing value:[/red] no value for {escape(str(exc_value.var))}", highlight=False)
            code = EXIT_USAGE
        elif issubclass(exc_type, (ShapeError, InvalidSpecError, ConfigError)):
            self.console.print(f"[red]Invalid input:[/red] {escape(str(exc_value))}", highlight=False)
            code = EXIT_USAGE
        elif issubclass(exc_type, FileNotFoundError):
            self.console.print(f"[red]File not found:[/red] {escape(str(exc_value.filename or exc_value))}", highlight=False)
            code = EXIT_USAGE
        elif issubclass(exc_type, DetComplexError):
            self.console.print(f"[red]Error:[/red] {escape(str(exc_value))}", highlight=False)
            code = EXIT_USAGE
        else:
            return False  # Let other exceptions propagate

        raise Exit(code)

    def _handle_failure(self, e: DetComplexError):
        self.console.print(f"[red]Check failed:[/red] {escape(str(e))}", highlight=False)
        report = getattr(e, 'report', None)
        witness = getattr(report, 'witness', None)
        if witness is not None:
            self.console.print(f"[yellow]Replay:[/yellow] seed {report.seed}, trial {witness.trial}, "
                               f"bound {report.bound}")

    def _handle_poset_error(self, e: PosetError):
        self.console.print(f"[red]Invalid poset:[/red] {escape(str(e))}", highlight=False)
        if len(e.problems) > 1:
            self.console.print("[red]Problems:[/red]")
            for problem in e.problems:
                self.console.print(f"  [red]• {escape(problem)}[/red]", highlight=False)
