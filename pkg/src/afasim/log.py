"""
afasim.log - console and run-file logging for the command line
"""
import logging
from pathlib import Path
import sys
import time

logger = logging.getLogger(__name__)
LOG_FORMAT = "%(asctime)s [%(name)s] [%(levelname)s]  %(message)s"
RUN_LOG_NAME = "afasim.%Y_%m_%d_%H%M%S.log"

root_logger = logging.getLogger()
_handlers = {"stream": None, "file": None}


def demote_to(level):
    def _demote(record):
        record.levelno = level
        record.levelname = logging.getLevelName(level)
        return True

    return _demote


def first_line_after(delimiter):
    """Keep only the text between `delimiter` and the first newline."""

    def _first_line_after(record):
        text = str(record.args[0]).partition(delimiter)[2]
        record.args = (text.partition("\n")[0], *record.args[1:])
        return True

    return _first_line_after


warning_filters = (
    demote_to(logging.DEBUG),
    first_line_after(": "),
)


def redirect_warnings(remove=False):
    warning_logger = logging.getLogger("py.warnings")
    adjust = warning_logger.removeFilter if remove else warning_logger.addFilter
    for f in warning_filters:
        adjust(f)
    logging.captureWarnings(not remove)


def _drop_handler(kind):
    handler = _handlers[kind]
    if handler is None:
        return
    root_logger.removeHandler(handler)
    _handlers[kind] = None
    if kind == "file":
        handler.close()
        redirect_warnings(remove=True)


def init_logging(log_path=None, level=logging.WARNING, stream=None):
    """
    Route log records to stderr (or `stream`) at `level`.

    When `log_path` is a directory, a timestamped run log is also written there
    at DEBUG level and Python warnings are captured into it instead of the
    console.
    """
    _drop_handler("stream")
    formatter = logging.Formatter(LOG_FORMAT)
    root_logger.setLevel(logging.NOTSET)

    stream_handler = logging.StreamHandler(stream or sys.stderr)
    stream_handler.setFormatter(formatter)
    stream_handler.setLevel(level)
    root_logger.addHandler(stream_handler)
    _handlers["stream"] = stream_handler

    if log_path is not None:
        _drop_handler("file")
        path = Path(log_path) / time.strftime(RUN_LOG_NAME)
        logger.info("Logging to '%s' at DEBUG level", path)
        file_handler = logging.FileHandler(path)
        file_handler.setFormatter(formatter)
        file_handler.setLevel(logging.DEBUG)
        root_logger.addHandler(file_handler)
        _handlers["file"] = file_handler
        redirect_warnings()


def deinit_logging():
    _drop_handler("stream")
    _drop_handler("file")
