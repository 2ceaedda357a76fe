import sys
import traceback
from datetime import datetime, timezone
from pathlib import Path

from ... import __version__
from ...core import log


def setup_global_error_logging(log_path: Path) -> Path:
    """
    Keep the traceback of the last uncaught exception in ``log_path``.

    The file starts with the tool version and the command line, so a crash report is enough to
    replay the run. The original hook still prints the traceback.

    :param log_path: Log file, replaced on every run
    :return: The log path
    """
    log_path.parent.mkdir(parents=True, exist_ok=True)
    log_path.unlink(missing_ok=True)

    # installing twice replaces our hook instead of chaining it
    previous_hook = getattr(sys.excepthook, 'previous', sys.excepthook)

    def write_crash_report(exc_type, exc_value, tb):
        header = [
            f"detcomplex {__version__}",
            f"time: {datetime.now(timezone.utc).isoformat(timespec='seconds')}",
            f"argv: {' '.join(sys.argv)}",
            "",
        ]
        body = ''.join(traceback.format_exception(exc_type, exc_value, tb))
        log_path.write_text("\n".join(header) + body, encoding="utf-8")
        log.error("Unexpected %s, traceback saved to %s", exc_type.__name__, log_path)
        previous_hook(exc_type, exc_value, tb)

    write_crash_report.previous = previous_hook
    sys.excepthook = write_crash_report
    return log_path
