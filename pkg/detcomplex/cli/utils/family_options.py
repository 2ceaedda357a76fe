"""Family selection options shared by the commands."""
from enum import Enum
from pathlib import Path

import typer

from ...core.errors import InvalidSpecError
from ...types.family import FamilySpec

__all__ = ['Family', 'FAMILY', 'SIZE', 'COMPOSITION', 'TABLE', 'resolve_family', 'read_text']


class Family(Enum):
    PERM = 'perm'
    HOPERM = 'hoperm'
    MPERM = 'mperm'


FAMILY = typer.Option(None, "--family", "-f", case_sensitive=False, show_default=False,
                      help="Polynomial family: [cyan]perm[/cyan], [cyan]hoperm[/cyan] or [cyan]mperm[/cyan]")
SIZE = typer.Option(None, "--n", "-n", min=1, show_default=False,
                    help="Size n for perm and hoperm")
COMPOSITION = typer.Option(None, "--comp", "-c", show_default=False,
                           help="Composition m1,m2,... for mperm")
TABLE = typer.Option(False, "--table", help="Show a table instead of plain text")


def resolve_family(family: Family | None, n: int | None, comp: str | None) -> FamilySpec:
    """
    :raises InvalidSpecError: If no family is given or its size options are incomplete
    """
    if family is None:
        raise InvalidSpecError("Missing --family")
    return FamilySpec.parse(family.value, n, comp)


def read_text(path: Path) -> str:
    """Read an input file, ``-`` meaning standard input."""
    if str(path) == '-':
        return typer.get_text_stream('stdin').read()
    return Path(path).read_text(encoding='utf-8')
