from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Self

from . import log
from .errors import ConfigError

__all__ = ['VerifySettings', 'LogSettings', 'Settings', 'CONFIG_FILE_NAME']

CONFIG_FILE_NAME = "detcomplex.toml"


def _typed(section: str, data: dict, key: str, kind: type, default: Any) -> Any:
    if key not in data:
        return default
    value = data[key]
    # bool is an int subclass, never accept it for numbers
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise ConfigError(f"[{section}] {key} must be {kind.__name__}, got {type(value).__name__}")
    return value


@dataclass(frozen=True, slots=True)
class VerifySettings:
    """Defaults of the randomized detrep check"""
    trials: int = 20
    seed: int = 0
    bound_factor: int = 10

    @classmethod
    def from_dict(cls, d: dict) -> Self:
        defaults = cls()
        trials = _typed('verify', d, 'trials', int, defaults.trials)
        bound_factor = _typed('verify', d, 'bound_factor', int, defaults.bound_factor)
        if trials < 1:
            raise ConfigError(f"[verify] trials must be >= 1, got {trials}")
        if bound_factor < 1:
            raise ConfigError(f"[verify] bound_factor must be >= 1, got {bound_factor}")
        return cls(trials=trials, seed=_typed('verify', d, 'seed', int, defaults.seed), bound_factor=bound_factor)


@dataclass(frozen=True, slots=True)
class LogSettings:
    level: str = "WARNING"
    color: bool = True

    @classmethod
    def from_dict(cls, d: dict) -> Self:
        defaults = cls()
        level = _typed('log', d, 'level', str, defaults.level).upper()
        if level not in log.LEVELS:
            raise ConfigError(f"[log] level '{level}' is not a logging level")
        return cls(level=level, color=_typed('log', d, 'color', bool, defaults.color))


@dataclass(frozen=True, slots=True)
class Settings:
    """
    Contents of ``workdir/config/detcomplex.toml``

    A missing file or section means defaults. The ``[limits]`` section is informational; the
    size caps themselves are constants of the library.
    """
    verify: VerifySettings = field(default_factory=VerifySettings)
    log: LogSettings = field(default_factory=LogSettings)

    @classmethod
    def load_toml(cls, path: Path) -> Self:
        """
        Load settings from a TOML file.

        :param path: Path to the TOML file; a missing file gives the defaults
        :return: Settings instance
        :raises ConfigError: If the file is not valid TOML or a key has the wrong type
        """
        import tomllib

        if not path.exists():
            return cls()
        try:
            with open(path, 'rb') as f:
                data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"{path}: {e}") from None

        for section in ('verify', 'log', 'limits'):
            if section in data and not isinstance(data[section], dict):
                raise ConfigError(f"{path}: [{section}] must be a table")
        return cls(
            verify=VerifySettings.from_dict(data.get('verify', {})),
            log=LogSettings.from_dict(data.get('log', {})),
        )

    @classmethod
    def load_workdir(cls, workdir: Path) -> Self:
        return cls.load_toml(workdir / "config" / CONFIG_FILE_NAME)
