from pathlib import Path

import typer

from ..app import app, app_state
from ..utils.error_handler import ErrorHandler
from ..utils.error_hook import setup_global_error_logging
from ...core import log
from ...core.errors import ConfigError

# Import commands
from . import evaluate, special, detrep, hessian, certify, upper_bound, poset, blocks, limits

__all__ = ['evaluate', 'special', 'detrep', 'hessian', 'certify', 'upper_bound', 'poset', 'blocks', 'limits']


@app.callback()
def setup(
        ctx: typer.Context,
        workdir: Path = typer.Option(
            app_state.workdir,
            "--workdir", "-w",
            envvar="DETCOMPLEX_WORK_DIR",
            help="Working directory (holds [cyan]config/detcomplex.toml[/cyan])",
            file_okay=False, dir_okay=True,
            resolve_path=True,
        ),
        log_level: str | None = typer.Option(
            None,
            "--log-level", "-l",
            envvar="DETCOMPLEX_LOG_LEVEL",
            help="Log level (DEBUG, INFO, WARNING, ERROR); logs go to stderr",
        ),
):
    """
    detcomplex Command Line Interface
    """
    if ctx.resilient_parsing:
        return

    # If no subcommand is provided, show complete help like --help
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        raise typer.Exit(0)

    app_state.workdir = workdir

    with ErrorHandler():
        settings = app_state.settings
        level = (log_level or settings.log.level).upper()
        if level not in log.LEVELS:
            raise ConfigError(f"Unknown log level '{level}'")
        log.set_level(level)
        log.set_color(settings.log.color)

    if workdir.is_dir():
        setup_global_error_logging(app_state.output_dir / "logs" / "error.log")
