from pathlib import Path

import typer
from typer import Typer, Argument, Option
from rich.console import Console
from rich.table import Table

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, TABLE, resolve_family, read_text
from ...core.documents import parse_matrix
from ...core.errors import PosetError
from ...core.families import point_from_matrix
from ...core.poset_detrep import eval_poset_polynomial, family_poset, validate_poset
from ...core.poset_dsl import parse_poset, serialize_poset
from ...types.affine import VarId
from ...types.rational import format_rational

__all__ = []

app_poset = Typer(help="Graded labeled posets in the text format")
app.add_typer(app_poset, name="poset")

console = Console()


@app_poset.command()
def validate(
        file: Path = Argument(..., show_default=False, help="Poset file ([cyan]-[/cyan] for stdin)"),
        table: bool = TABLE,
):
    """
    Check that a poset file can be compiled
    """
    with ErrorHandler():
        poset = parse_poset(read_text(file)).poset
        report = validate_poset(poset)
        if not report.valid:
            raise PosetError(report.problems[0], report.problems)

        maximum = report.unique_maximum or f"none ({len(report.maximal)} maximal, top will be adjoined)"
        rows = [
            ("elements", str(report.element_count)),
            ("rank", str(report.rank)),
            ("minimum", report.minimum),
            ("maximum", maximum),
        ]
        if not table:
            typer.echo("valid")
            for key, value in rows:
                typer.echo(f"{key} {value}")
            return
        t = Table(title=poset.name or str(file))
        t.add_column("Property", style="cyan")
        t.add_column("Value")
        for key, value in rows:
            t.add_row(key, value)
        console.print(t)


@app_poset.command()
def export(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
):
    """
    Print the poset a family is compiled from
    """
    with ErrorHandler():
        typer.echo(serialize_poset(family_poset(resolve_family(family, n, comp))), nl=False)


@app_poset.command(name="eval")
def eval_(
        poset: Path = Option(..., "--poset", "-p", show_default=False, help="Poset file"),
        point: Path = Option(..., "--point", show_default=False,
                             help="Matrix of values; without --family entry (i, j) is x[i,j]"),
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
):
    """
    Evaluate the chain polynomial of a poset at a point
    """
    with ErrorHandler():
        p = parse_poset(read_text(poset)).poset
        if family is not None:
            spec = resolve_family(family, n, comp)
            values = point_from_matrix(spec, parse_matrix(read_text(point), spec.shape))
        else:
            m = parse_matrix(read_text(point))
            values = {VarId(i + 1, j + 1): m[i, j] for i in range(m.rows) for j in range(m.cols)}
        typer.echo(format_rational(eval_poset_polynomial(p, values)))
