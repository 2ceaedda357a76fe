import typer
from rich.console import Console
from rich.table import Table

from ..app import app
from ..utils.family_options import TABLE
from ...core import certifier, families
from ...core.exact_algebra import SYMBOLIC_DET_MAX_SIZE

__all__ = []

console = Console()

LIMITS = (
    ("brute_hoperm_max_n", families.BRUTE_HOPERM_MAX_N, "eval --method brute, hoperm"),
    ("brute_mperm_max_gamma", families.BRUTE_MPERM_MAX_GAMMA, "eval --method brute, perm and mperm"),
    ("rec_hoperm_max_n", families.REC_HOPERM_MAX_N, "eval --method rec, hoperm"),
    ("rec_mperm_max_gamma", families.REC_MPERM_MAX_GAMMA, "eval --method rec, perm and mperm"),
    ("certify_hoperm_max_n", certifier.CERTIFY_HOPERM_MAX_N, "certify, hoperm"),
    ("certify_mperm_max_vars", certifier.CERTIFY_MPERM_MAX_VARS, "certify, gamma*n for perm and mperm"),
    ("symbolic_det_max_size", SYMBOLIC_DET_MAX_SIZE, "symbolic determinant expansion"),
)


@app.command()
def limits(table: bool = TABLE):
    """
    List the size caps
    """
    if not table:
        for name, value, _ in LIMITS:
            typer.echo(f"{name} {value}")
        return

    t = Table(title="Size caps")
    t.add_column("Name", style="cyan")
    t.add_column("Value", justify="right")
    t.add_column("Applies to")
    for name, value, where in LIMITS:
        t.add_row(name, str(value), where)
    console.print(t)
