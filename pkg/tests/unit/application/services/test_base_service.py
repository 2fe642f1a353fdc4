"""
Tests for the BaseService class.
"""
from unittest.mock import MagicMock

from shadowrca.application.services.base_service import BaseService
from shadowrca.config import Settings, get_settings
from shadowrca.core.error_handling.errors import ValidationError


class SampleService(BaseService):
    """Concrete service for testing"""


class TestBaseService:
    def test_defaults_to_process_settings(self):
        assert SampleService().settings is get_settings()

    def test_explicit_settings(self):
        settings = Settings(history_size=4)
        assert SampleService(settings=settings).settings.history_size == 4

    def test_logger_named_after_module(self):
        service = SampleService()
        assert service.logger is not None

    def test_handle_error_delegates(self):
        handler = MagicMock()
        handler.handle_error.return_value = {"code": "X"}
        service = SampleService(error_handler=handler)
        error = ValueError("bad")

        assert service.handle_error(error, {"member": "a"}) == {"code": "X"}
        handler.handle_error.assert_called_once_with(error, {"member": "a"})
        assert service.error_handler is handler

    def test_handle_error_inline(self):
        response = SampleService().handle_error(ValidationError("nope", "BAD_INPUT"))
        assert response == {"code": "BAD_INPUT", "message": "nope"}

    def test_handle_unexpected_error_inline(self):
        response = SampleService().handle_error(RuntimeError("crash"))
        assert response == {"code": "internal_error", "message": "crash"}
