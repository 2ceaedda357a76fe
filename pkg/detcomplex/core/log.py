from typing import Any
import os
import sys
import logging

# Try to import rich, but don't fail if not available
try:
    import rich
    import rich.logging
    from rich.console import Console
except ImportError:
    rich = None

__all__ = 'debug', 'info', 'warning', 'error', 'logger', 'set_level', 'set_color', 'LEVELS'

LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class DetComplexLogFormatter(logging.Formatter):
    """Plain formatter used when rich is not available or color is off"""

    def format(self, record: logging.LogRecord) -> str:
        record.msg = str(record.msg)
        return super().format(record)


def _make_handler(color: bool) -> logging.Handler:
    if color and rich:
        handler = rich.logging.RichHandler(
            console=Console(stderr=True),
            show_time=True,
            show_level=True,
            omit_repeated_times=False,
            markup=False,
            show_path=False,
        )
        handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%Y-%m-%d %H:%M:%S]"))
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(DetComplexLogFormatter(
            "%(asctime)s %(levelname)-7s %(message)s",
            datefmt="[%Y-%m-%d %H:%M:%S%z]")
        )
    return handler


# Create logger
logger = logging.getLogger("detcomplex")
# Remove existing handlers before adding new one
if logger.hasHandlers():
    logger.handlers.clear()
logger.propagate = False

logger.setLevel(os.environ.get("DETCOMPLEX_LOG_LEVEL", "WARNING").upper())
logger.addHandler(_make_handler(os.environ.get("DETCOMPLEX_NO_COLOR_LOG", "") != "1"))


def set_level(level: str | int) -> None:
    """
    Change the log level of the detcomplex logger.

    :param level: Level name (``"DEBUG"``, ``"INFO"``, ...) or number
    """
    logger.setLevel(level.upper() if isinstance(level, str) else level)


def set_color(enabled: bool) -> None:
    """Switch between the rich handler and the plain one."""
    if os.environ.get("DETCOMPLEX_NO_COLOR_LOG", "") == "1":
        enabled = False
    logger.handlers.clear()
    logger.addHandler(_make_handler(enabled))


def debug(msg: str, *args: Any) -> None:
    logger.debug(msg, *args)


def info(msg: str, *args: Any) -> None:
    """
    Log an info message.

    :param msg: Message format string
    :param args: Arguments to format the message
    """
    logger.info(msg, *args)


def warning(msg: str, *args: Any) -> None:
    """
    Log a warning message.

    :param msg: Message format string
    :param args: Arguments to format the message
    """
    logger.warning(msg, *args)


def error(msg: str, *args: Any) -> None:
    logger.error(msg, *args)
