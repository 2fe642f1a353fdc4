# shadowrca/cli/error_handler.py
"""
Error handler that reports errors on stderr and maps them to exit codes
"""
import sys
from typing import Any, Dict, Optional, TextIO

from shadowrca.core.error_handling.base_error_handler import BaseErrorHandler
from shadowrca.core.error_handling.errors import ShadowError

UNEXPECTED_EXIT_CODE = 1


class CliErrorHandler(BaseErrorHandler[ShadowError]):
    """Renders `error [CODE]: message` lines on stderr"""

    def __init__(self, stream: Optional[TextIO] = None, include_error_details: bool = False):
        super().__init__(ShadowError, logger_name=__name__, include_error_details=include_error_details)
        self.stream = stream

    def send_error(self, error_response: Dict[str, Any], context: Optional[Dict[str, Any]] = None) -> None:
        stream = self.stream or sys.stderr
        stream.write(f"error [{error_response['code']}]: {error_response['message']}\n")

    def exit_code(self, error: Exception) -> int:
        """Handle the error and return the process exit code it maps to"""
        self.handle_error(error)
        if isinstance(error, ShadowError):
            return error.exit_code
        return UNEXPECTED_EXIT_CODE
