from enum import Enum
from pathlib import Path

import typer
from typer import Option

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, resolve_family, read_text
from ...core.documents import parse_matrix
from ...core.families import evaluate
from ...types.rational import format_rational

__all__ = []


class Method(Enum):
    BRUTE = 'brute'
    REC = 'rec'


@app.command(name="eval")
def eval_(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        matrix: Path = Option(..., "--matrix", "-m", show_default=False,
                              help="Matrix file, one row per line ([cyan]-[/cyan] for stdin)"),
        method: Method = Option(Method.REC, "--method", case_sensitive=False,
                                help="[cyan]brute[/cyan] enumerates the terms, [cyan]rec[/cyan] expands "
                                     "row by row with memoization"),
):
    """
    Evaluate a family polynomial exactly at a matrix
    """
    with ErrorHandler():
        spec = resolve_family(family, n, comp)
        x = parse_matrix(read_text(matrix), spec.shape)
        typer.echo(format_rational(evaluate(spec, x, method.value)))
