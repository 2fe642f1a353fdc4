"""
Base error handler for consistent error handling across the package.

Subclasses decide where a formatted error goes (stderr for the CLI, the
failure list of an analysis report, ...) while logging and formatting
stay uniform.
"""
from __future__ import annotations

from typing import Any, Callable, Dict, Generic, Optional, Type, TypeVar

from shadowrca.monitoring.logging_config import get_logger

T = TypeVar("T")
E = TypeVar("E", bound=Exception)


class BaseErrorHandler(Generic[E]):
    """
    Base class for error handlers that provides common error handling functionality.
    """

    def __init__(
        self,
        default_error_type: Type[E],
        logger_name: Optional[str] = None,
        include_error_details: bool = False,
    ):
        """Initialize the error handler.

        Args:
            default_error_type: The exception type treated as an expected error
            logger_name: Optional name for the logger (defaults to module name)
            include_error_details: Whether to include full error details by default
        """
        self.default_error_type = default_error_type
        self.include_error_details = include_error_details
        self.logger = get_logger(logger_name or __name__)

    def handle_error(
        self,
        error: Exception,
        context: Optional[Dict[str, Any]] = None,
        include_details: Optional[bool] = None,
    ) -> Dict[str, Any]:
        """Log, format and dispatch an error.

        Returns:
            The formatted error response
        """
        include_details = include_details if include_details is not None else self.include_error_details

        self._log_error(error, context, include_details)

        error_response = self.format_error(error, include_details)
        self.send_error(error_response, context)
        return error_response

    def _log_error(
        self,
        error: Exception,
        context: Optional[Dict[str, Any]] = None,
        include_details: bool = False,
    ) -> None:
        if include_details or not isinstance(error, self.default_error_type):
            self.logger.exception("error", error=str(error), context=context or {})
        else:
            self.logger.error("error", error=str(error), context=context or {})

    def format_error(self, error: Exception, include_details: bool = False) -> Dict[str, Any]:
        """Format an exception as an error response.

        Args:
            error: The exception to format
            include_details: Whether to include full exception details

        Returns:
            A dictionary containing the error details
        """
        if isinstance(error, self.default_error_type):
            error_dict = {
                "code": getattr(error, "error_code", "error"),
                "message": getattr(error, "message", str(error)),
            }
            if include_details or getattr(error, "details", None):
                error_dict["details"] = getattr(error, "details", {})
            return error_dict

        return {
            "code": "internal_error",
            "message": "An unexpected error occurred",
            "details": {"error": str(error)} if include_details else {},
        }

    def send_error(self, error_response: Dict[str, Any], context: Optional[Dict[str, Any]] = None) -> None:
        """Dispatch a formatted error. Must be implemented by subclasses."""
        raise NotImplementedError("Subclasses must implement send_error")

    def wrap(
        self,
        handler: Callable[..., T],
        include_details: Optional[bool] = None,
    ) -> Callable[..., Optional[T]]:
        """Wrap a callable so that raised errors are handled and None is returned."""

        def wrapped(*args: Any, **kwargs: Any) -> Optional[T]:
            try:
                return handler(*args, **kwargs)
            except Exception as e:
                self.handle_error(e, self._get_context_from_args(args, kwargs), include_details)
                return None

        return wrapped

    def _get_context_from_args(self, args: tuple[Any, ...], kwargs: Dict[str, Any]) -> Dict[str, Any]:
        """Extract context from handler arguments. Subclasses may override."""
        return {}
