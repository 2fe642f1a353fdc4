# shadowrca/monitoring/logging_config.py
"""
Structured logging configuration
"""
import logging
import sys
from typing import Optional, TextIO, cast

import structlog


class _StderrWriter:
    """Write to whatever sys.stderr is at call time"""

    def write(self, message: str) -> int:
        return sys.stderr.write(message)

    def flush(self) -> None:
        sys.stderr.flush()


def setup_logging(log_level: str = "INFO", log_format: Optional[str] = None) -> None:
    """Setup structured logging with structlog.

    Output goes to stderr; stdout belongs to command output.

    Args:
        log_level: Minimum level name (DEBUG, INFO, ...)
        log_format: "console" or "json"; defaults to console on a TTY
    """
    if log_format is None:
        log_format = "console" if sys.stderr.isatty() else "json"

    renderer = (
        structlog.dev.ConsoleRenderer()
        if log_format == "console"
        else structlog.processors.JSONRenderer(sort_keys=True)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, log_level.upper(), logging.INFO)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=cast(TextIO, _StderrWriter())),
        cache_logger_on_first_use=False,
    )

    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format="%(message)s",
        stream=_StderrWriter(),
    )


def get_logger(name: str) -> structlog.BoundLogger:
    """Get a structured logger, configuring defaults on first use"""
    if not structlog.is_configured():
        setup_logging()
    return structlog.get_logger(name)
