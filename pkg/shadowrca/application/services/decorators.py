"""
Decorators for service layer methods to handle cross-cutting concerns.
"""
import functools
import time
from typing import Any, Callable, Optional, TypeVar, cast

from shadowrca.monitoring.metrics import record_stage

F = TypeVar("F", bound=Callable[..., Any])


def log_execution(stage: Optional[str] = None):
    """
    Decorator to log method entry, exit, and execution time.

    When `stage` is given the duration is also observed on the pipeline
    stage histogram.

    Args:
        stage: Optional pipeline stage name for metrics
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(self, *args, **kwargs):
            log = getattr(self, "logger", None)
            if log is None:
                return func(self, *args, **kwargs)

            log.debug(f"{func.__name__}_started")
            started = time.perf_counter()
            try:
                result = func(self, *args, **kwargs)
            except Exception as e:
                log.debug(f"{func.__name__}_failed", error=str(e))
                raise
            duration = time.perf_counter() - started
            log.debug(f"{func.__name__}_completed", duration_s=round(duration, 6))
            if stage is not None:
                record_stage(stage, duration)
            return result

        return cast(F, wrapper)

    return decorator
