import typer
from typer import Option

from ..app import app
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, resolve_family
from ...core import certifier

__all__ = []


@app.command(name="upper-bound")
def upper_bound(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        cross_check: bool = Option(False, "--cross-check",
                                   help="Also compile the representation and compare its size"),
):
    """
    Print the size of the cycle-cover determinantal representation
    """
    with ErrorHandler():
        spec = resolve_family(family, n, comp)
        typer.echo(str(certifier.upper_bound(spec, cross_check=cross_check)))
