from pathlib import Path

import typer
from typer import Typer, Option

from ..app import app, app_state
from ..utils.error_handler import ErrorHandler
from ..utils.family_options import Family, FAMILY, SIZE, COMPOSITION, resolve_family, read_text
from ...core import log
from ...core.documents import detrep_from_toml, detrep_to_toml, report_to_toml
from ...core.errors import InvalidSpecError, VerificationError
from ...core.families import var_order
from ...core.poset_detrep import build_for_family, family_reference, grenet_build, verify_detrep
from ...core.poset_dsl import parse_poset

__all__ = []

app_detrep = Typer(help="Determinantal representations compiled from graded posets")
app.add_typer(app_detrep, name="detrep")


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    log.info("Wrote %s", out)


@app_detrep.command()
def build(
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        poset: Path | None = Option(None, "--poset", "-p", show_default=False,
                                    help="Poset file instead of a family ([cyan]-[/cyan] for stdin)"),
        out: Path | None = Option(None, "--out", "-o", show_default=False,
                                  help="Write the document here instead of stdout"),
):
    """
    Compile a family (or a poset file) into a determinantal representation
    """
    with ErrorHandler():
        if poset is not None:
            if family is not None:
                raise InvalidSpecError("Give either --family or --poset, not both")
            rep = grenet_build(parse_poset(read_text(poset)).poset)
        else:
            rep = build_for_family(resolve_family(family, n, comp))
        _emit(detrep_to_toml(rep), out)


@app_detrep.command()
def verify(
        detrep: Path = Option(..., "--detrep", "-d", show_default=False,
                              help="Representation document from [cyan]detrep build[/cyan]"),
        family: Family | None = FAMILY,
        n: int | None = SIZE,
        comp: str | None = COMPOSITION,
        trials: int | None = Option(None, "--trials", "-t", min=1, show_default=False,
                                    help="Random points to test (default from config, 20)"),
        seed: int | None = Option(None, "--seed", "-s", show_default=False,
                                  help="Base seed (default from config, 0)"),
):
    """
    Check det(representation) against the family at random integer points
    """
    with ErrorHandler():
        rep = detrep_from_toml(read_text(detrep))
        if family is not None:
            spec = resolve_family(family, n, comp)
        elif rep.spec is not None:
            spec = rep.spec
        else:
            raise InvalidSpecError("The document names no family; pass --family")
        settings = app_state.settings.verify
        report = verify_detrep(
            rep, family_reference(spec),
            trials=settings.trials if trials is None else trials,
            seed=settings.seed if seed is None else seed,
            variables=var_order(spec),
            bound_factor=settings.bound_factor,
        )
        typer.echo(report_to_toml(report), nl=False)
        if not report.passed:
            raise VerificationError(f"{len(report.failures)} of {report.trials} trials failed for {spec}",
                                    report=report)
