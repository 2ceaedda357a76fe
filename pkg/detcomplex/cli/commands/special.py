from enum import Enum

import typer
from typer import Argument

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, resolve_family
from ...core.documents import format_matrix
from ...core.families import ones_value, zero_point
from ...types.rational import format_rational

__all__ = []


class SpecialPoint(Enum):
    ONES = 'ones'
    ZERO = 'zero'


@app.command()
def special(
        what: SpecialPoint = Argument(..., case_sensitive=False, show_default=False,
                                      help="[cyan]ones[/cyan]: value at the all-ones matrix, "
                                           "[cyan]zero[/cyan]: the explicit zero used by [cyan]certify[/cyan]"),
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
):
    """
    Print the value at the all-ones matrix or the family's explicit zero
    """
    with ErrorHandler():
        spec = resolve_family(family, n, comp)
        if what is SpecialPoint.ONES:
            typer.echo(format_rational(ones_value(spec)))
        else:
            typer.echo(format_matrix(zero_point(spec).matrix), nl=False)
