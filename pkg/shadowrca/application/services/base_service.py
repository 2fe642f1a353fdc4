"""
Base service class providing common functionality for all services.
"""
from abc import ABC
from typing import Any, Dict, Optional

import structlog

from shadowrca.config import Settings, get_settings
from shadowrca.core.error_handling.base_error_handler import BaseErrorHandler
from shadowrca.monitoring.logging_config import get_logger


class BaseService(ABC):
    """
    Abstract base class for all services.

    Provides a bound structlog logger named after the concrete service
    module, the process-wide settings and an optional error handler.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        error_handler: Optional[BaseErrorHandler] = None,
    ):
        self._settings = settings or get_settings()
        self._error_handler = error_handler
        self._logger = get_logger(self.__class__.__module__)

    @property
    def logger(self) -> structlog.BoundLogger:
        return self._logger

    @property
    def settings(self) -> Settings:
        return self._settings

    @property
    def error_handler(self) -> Optional[BaseErrorHandler]:
        return self._error_handler

    def handle_error(self, error: Exception, context: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Handle an error using the service's error handler.

        Without a handler the error is logged and formatted inline.
        """
        if self._error_handler:
            return self._error_handler.handle_error(error, context)
        self._logger.error("unhandled_error", error=str(error), context=context or {})
        return {
            "code": getattr(error, "error_code", "internal_error"),
            "message": getattr(error, "message", str(error)),
        }
