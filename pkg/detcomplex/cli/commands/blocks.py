import typer
from rich.console import Console
from rich.table import Table

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, TABLE, resolve_family
from ...core.certifier import block_report
from ...types.rational import format_rational

__all__ = []

console = Console()


@app.command()
def blocks(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        table: bool = TABLE,
):
    """
    Ranks and determinants of the closed-form Hessian blocks
    """
    with ErrorHandler():
        spec = resolve_family(family, n, comp)
        checks = block_report(spec)
        if not table:
            for b in checks:
                typer.echo(f"{b.name} {b.matrix.rows}x{b.matrix.cols} rank {b.rank} det {format_rational(b.det)}")
            return

        t = Table(title=f"Hessian blocks of {spec}")
        t.add_column("Block", style="cyan")
        t.add_column("Size", justify="right")
        t.add_column("Rank", justify="right")
        t.add_column("Determinant", justify="right")
        for b in checks:
            det_style = "green" if b.nonsingular else "red"
            t.add_row(b.name, f"{b.matrix.rows}x{b.matrix.cols}", str(b.rank),
                      f"[{det_style}]{format_rational(b.det)}[/{det_style}]")
        console.print(t)
