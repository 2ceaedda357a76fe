from pathlib import Path

import typer
from typer import Option
from rich.console import Console
from rich.table import Table

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, TABLE, resolve_family, read_text
from ...core.documents import format_matrix, parse_matrix
from ...core.families import hessian_at, var_order, zero_point
from ...types.rational import format_rational

__all__ = []

console = Console()


@app.command()
def hessian(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        point: Path | None = Option(None, "--point", "-p", show_default=False,
                                    help="Matrix to differentiate at (default: the family's explicit zero)"),
        table: bool = TABLE,
):
    """
    Print the exact Hessian at a point and its rank
    """
    with ErrorHandler():
        spec = resolve_family(family, n, comp)
        x = parse_matrix(read_text(point), spec.shape) if point is not None else zero_point(spec).matrix
        order = var_order(spec)
        h = hessian_at(spec, x, order)
        r = h.rank()

        if not table:
            typer.echo(format_matrix(h), nl=False)
            typer.echo(f"rank {r}")
            return

        t = Table(title=f"Hessian of {spec} ({h.rows}x{h.cols}, rank {r})")
        t.add_column("", style="cyan")
        for v in order:
            t.add_column(str(v), justify="right")
        for v, row in zip(order, h.data):
            t.add_row(str(v), *(format_rational(e) for e in row))
        console.print(t)
