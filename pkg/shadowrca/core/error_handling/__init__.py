"""
Error handling package for shadowrca.

This package contains custom exceptions and error handling utilities.
"""

from .base_error_handler import BaseErrorHandler
from .errors import (
    AlreadyBoundError,
    ConflictError,
    CycleDetectedError,
    DuplicateIdError,
    DuplicatePluginNameError,
    EmptySeedError,
    EmptyTreeError,
    InsufficientDataError,
    InvalidSpecError,
    KindViolationError,
    LayerOutOfRangeError,
    MultipleRootsError,
    NoAlertsError,
    NoProcessTreeError,
    NoSymptomsError,
    NotActiveError,
    NotFoundError,
    NotInSubgraphError,
    NotWatchedError,
    ParseError,
    PluginFailureError,
    SchemaMismatchError,
    SelfLoopError,
    ShadowError,
    StorageError,
    TreeViolationError,
    UnknownFaultRootError,
    UnknownMemberError,
    UnknownProcessError,
    ValidationError,
)

__all__ = [
    "BaseErrorHandler",
    "ShadowError",
    "ValidationError",
    "NotFoundError",
    "ConflictError",
    "ParseError",
    "StorageError",
    "NoSymptomsError",
    "DuplicateIdError",
    "SchemaMismatchError",
    "UnknownMemberError",
    "KindViolationError",
    "TreeViolationError",
    "SelfLoopError",
    "LayerOutOfRangeError",
    "MultipleRootsError",
    "EmptyTreeError",
    "NotActiveError",
    "CycleDetectedError",
    "UnknownProcessError",
    "AlreadyBoundError",
    "DuplicatePluginNameError",
    "PluginFailureError",
    "EmptySeedError",
    "NoProcessTreeError",
    "NotWatchedError",
    "InsufficientDataError",
    "NotInSubgraphError",
    "NoAlertsError",
    "InvalidSpecError",
    "UnknownFaultRootError",
]
