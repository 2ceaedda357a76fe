import sys
from dataclasses import dataclass, field
from pathlib import Path

try:
    import typer
except ImportError:
    print("The detcomplex CLI needs typer: pip install 'detcomplex[cli]'", file=sys.stderr)
    raise SystemExit(1)

from ..core.config import Settings

__all__ = ["app", "app_state", "AppState", "find_workdir"]

# How many parent directories are searched for a workdir
WORKDIR_SEARCH_DEPTH = 10

app = typer.Typer(
    invoke_without_command=True,
    context_settings={"help_option_names": ["-h", "--help"]},
    rich_markup_mode="rich",
    help="Exact permanent-like polynomials, determinantal representations and Hessian-rank bounds.",
)


def find_workdir(start: Path | None = None) -> Path:
    """
    The nearest ``workdir`` folder at or above ``start`` (default: the current directory).

    Falls back to ``<start>/workdir``, which need not exist; a missing workdir just means
    default settings and no crash log.
    """
    start = (start or Path()).resolve()
    for directory in [start, *start.parents][:WORKDIR_SEARCH_DEPTH]:
        if (directory / "workdir").is_dir():
            return directory / "workdir"
    return start / "workdir"


@dataclass(slots=True)
class AppState:
    """
    Where the CLI reads its configuration from, and the settings loaded from there
    """
    _workdir: Path = field(default_factory=find_workdir)
    _settings: Settings | None = None

    @property
    def workdir(self) -> Path:
        return self._workdir

    @workdir.setter
    def workdir(self, path: Path):
        # settings belong to the old workdir
        self._workdir = path
        self._settings = None

    @property
    def output_dir(self) -> Path:
        return self._workdir / "output"

    @property
    def settings(self) -> Settings:
        """Settings from ``config/detcomplex.toml``, loaded on first use."""
        if self._settings is None:
            self._settings = Settings.load_workdir(self._workdir)
        return self._settings


app_state = AppState()
