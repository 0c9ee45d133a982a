import logging
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Iterator, Optional

from tqdm import tqdm

CONSOLE_FORMAT: str = "%(levelname)s | %(message)s"
FILE_FORMAT: str = "%(asctime)s %(levelname)-8s | %(message)s"


class _TqdmConsoleHandler(logging.StreamHandler):
    """Console handler that prints above running optimizer progress bars."""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            tqdm.write(self.format(record), file=self.stream)
            self.flush()
        except Exception:
            self.handleError(record)


class Logger:
    """
    Package logger: a console handler whose level follows the CLI verbosity and
    at most one run file handler that always records DEBUG messages.
    """

    def __init__(self, level: int = logging.WARNING, filename: Optional[Path] = None) -> None:
        self.logger: logging.Logger = logging.getLogger("specpinn")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        self.level: int = level
        self._console = _TqdmConsoleHandler()
        self._console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        self._console.setLevel(level)
        self.logger.addHandler(self._console)
        self._file_handler: Optional[logging.Handler] = None
        if filename:
            self.add_file_handler(filename)

        for name in ("jax", "absl"):
            logging.getLogger(name).setLevel(logging.WARNING)

    def set_level(self, level: int) -> None:
        """
        Set the console logging level.

        :param level: INFO, WARNING, ERROR, and DEBUG
        """
        self.level = level
        self._console.setLevel(level)

    def add_file_handler(self, filename: Path) -> None:
        """Attach a run log file, replacing the previous one."""
        self.remove_file_handler()
        handler = RotatingFileHandler(str(filename), "a", maxBytes=10_000_000, backupCount=3)
        handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        handler.setLevel(logging.DEBUG)
        self.logger.addHandler(handler)
        self._file_handler = handler

    def remove_file_handler(self) -> None:
        if self._file_handler is None:
            return
        self.logger.removeHandler(self._file_handler)
        self._file_handler.close()
        self._file_handler = None

    def debug(self, msg, *args, **kwargs) -> None:
        self.logger.debug(msg, *args, **kwargs)

    def info(self, msg, *args, **kwargs) -> None:
        self.logger.info(msg, *args, **kwargs)

    def warning(self, msg, *args, **kwargs) -> None:
        self.logger.warning(msg, *args, **kwargs)

    def error(self, msg, exception: Any = None, *args, **kwargs) -> None:
        """Log at ERROR level and raise ``exception(msg)`` when an exception type is given."""
        self.logger.error(msg, *args, **kwargs)
        if exception is not None:
            raise exception(msg)


logger = Logger()


def set_logging_level(level: int) -> None:
    """
    Set the global console logging level

    :param level: INFO, WARNING, ERROR, and DEBUG
    :type level: int (logging)
    """
    logger.set_level(level)


@contextmanager
def run_log(filename: Path) -> Iterator[Logger]:
    """Record every message into ``filename`` while the block runs."""
    logger.add_file_handler(filename)
    try:
        yield logger
    finally:
        logger.remove_file_handler()


class LoggingContextManager:
    """
    Temporarily change the console level, e.g. to follow a single stage at DEBUG.

    >>> with LoggingContextManager(logging.DEBUG):
    ...     trainer.fit()
    """

    def __init__(self, level: int) -> None:
        self.level = level
        self.previous: Optional[int] = None

    def __enter__(self) -> Logger:
        self.previous = logger.level
        logger.set_level(self.level)
        return logger

    def __exit__(self, *exc_info) -> None:
        if self.previous is not None:
            logger.set_level(self.previous)
