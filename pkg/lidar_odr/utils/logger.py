"""structlog setup and the category logger used across lidar-odr."""

import logging
import os
import sys
import time
from contextlib import contextmanager
from enum import IntEnum
from typing import Any, Dict, Iterator, List, Mapping, Optional, Union

import structlog
from pydantic import BaseModel, Field, field_validator


class LogLevel(IntEnum):
    """Verbosity levels; a line is emitted when its level <= the logger's verbosity."""
    ERROR = 0
    WARN = 1
    INFO = 2
    DEBUG = 3


# LogLevel -> (structlog method, stdlib level)
_BACKEND: Dict[LogLevel, tuple] = {
    LogLevel.ERROR: ("error", logging.ERROR),
    LogLevel.WARN: ("warning", logging.WARNING),
    LogLevel.INFO: ("info", logging.INFO),
    LogLevel.DEBUG: ("debug", logging.DEBUG),
}


def _stdlib_level(verbose: int) -> int:
    clamped = LogLevel(min(max(verbose, LogLevel.ERROR), LogLevel.DEBUG))
    return _BACKEND[clamped][1]


def _processors() -> List[Any]:
    chain: List[Any] = [
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]
    if sys.stderr.isatty() and os.getenv("NO_COLOR") is None:
        chain.append(structlog.dev.ConsoleRenderer())
    else:
        chain.append(structlog.processors.JSONRenderer())
    return chain


def configure_logging(verbose: int = 0) -> structlog.stdlib.BoundLogger:
    """
    Configure structlog on a stdlib backend that writes to stderr.

    Args:
        verbose: 0 errors only, 1 warnings, 2 stage summaries, 3 per-step detail

    Returns:
        The "lidar_odr" logger bound with the verbosity
    """
    level = _stdlib_level(verbose)
    structlog.configure(
        processors=_processors(),
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    # stdout carries reports and JSON; logs stay on stderr
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level)
    logging.getLogger().setLevel(level)
    return structlog.get_logger("lidar_odr").bind(verbose=verbose)


class LogLine(BaseModel):
    """One structured event: a stage category, a message and extra fields."""

    category: str = ""
    message: str = ""
    level: LogLevel = LogLevel.INFO
    auxiliary: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("level", mode="before")
    @classmethod
    def _level_by_name(cls, v: object) -> object:
        if isinstance(v, str):
            return LogLevel[v.upper()]
        return v

    def fields(self) -> Dict[str, Any]:
        return {"category": self.category, "level": self.level.name, **self.auxiliary}


class OdrLogger:
    """
    Category logger over a structlog backend.

    Categories name the pipeline stage emitting the event ("ingest",
    "clustering", "stage:BuildStage", ...). Filtering by verbosity happens
    here, before the backend sees the event.
    """

    def __init__(self, logger: Any, verbose: int = 0):
        self.logger = logger
        self.verbose = verbose

    def log(self, log_line: Union[LogLine, Mapping[str, Any]]) -> None:
        if not isinstance(log_line, LogLine):
            log_line = LogLine.model_validate(dict(log_line))
        if log_line.level > self.verbose:
            return
        method = getattr(self.logger, _BACKEND[log_line.level][0])
        method(log_line.message, **log_line.fields())

    def _emit(self, level: LogLevel, category: str, message: str, fields: Dict[str, Any]) -> None:
        self.log(LogLine(category=category, message=message, level=level, auxiliary=fields))

    def error(self, category: str, message: str, **fields: Any) -> None:
        self._emit(LogLevel.ERROR, category, message, fields)

    def warn(self, category: str, message: str, **fields: Any) -> None:
        self._emit(LogLevel.WARN, category, message, fields)

    def info(self, category: str, message: str, **fields: Any) -> None:
        self._emit(LogLevel.INFO, category, message, fields)

    def debug(self, category: str, message: str, **fields: Any) -> None:
        self._emit(LogLevel.DEBUG, category, message, fields)

    def child(self, **bindings: Any) -> "OdrLogger":
        """Logger sharing this one's verbosity with extra bound context."""
        return OdrLogger(self.logger.bind(**bindings), self.verbose)

    @contextmanager
    def timed(self, category: str, message: str, **fields: Any) -> Iterator[None]:
        """Log `message` at INFO with the wall time of the enclosed block."""
        start = time.perf_counter()
        yield
        self.info(category, message, seconds=round(time.perf_counter() - start, 3), **fields)


def get_logger(verbose: int = 0) -> OdrLogger:
    """Configured category logger for the CLI and the pipeline class."""
    return OdrLogger(configure_logging(verbose), verbose)


_NULL_LOGGER: Optional[OdrLogger] = None


def null_logger() -> OdrLogger:
    """Logger used by library functions called without one; drops everything."""
    global _NULL_LOGGER
    if _NULL_LOGGER is None:
        _NULL_LOGGER = OdrLogger(structlog.get_logger("lidar_odr"), verbose=-1)
    return _NULL_LOGGER
