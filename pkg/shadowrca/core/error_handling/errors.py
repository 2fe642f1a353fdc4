"""
Custom exceptions for shadowrca.

Every error carries a machine-readable code, optional details and the CLI
exit code it maps to (0 success, 2 parse/config, 3 I/O, 4 no symptoms).
"""
from typing import Any, Dict, List, Optional


class ShadowError(Exception):
    """Base class for all shadowrca exceptions."""

    def __init__(
        self,
        message: str = "An error occurred",
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        exit_code: int = 1,
    ):
        """Initialize the error.

        Args:
            message: Human-readable error message
            error_code: Machine-readable error code
            details: Additional error details
            exit_code: Process exit code when the error reaches the CLI
        """
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        self.exit_code = exit_code
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the error to a dictionary."""
        return {
            "error": {
                "code": self.error_code,
                "message": self.message,
                "details": self.details,
            }
        }


# --- families mapped to the exit contract ---------------------------------


class ValidationError(ShadowError):
    """Raised when input or configuration validation fails."""

    def __init__(
        self,
        message: str = "Validation failed",
        error_code: str = "VALIDATION_ERROR",
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message=message, error_code=error_code, details=details, exit_code=2)


class NotFoundError(ValidationError):
    """Raised when a referenced entity does not exist."""

    def __init__(
        self,
        resource: str = "Resource",
        resource_id: Optional[Any] = None,
        message: Optional[str] = None,
        error_code: str = "NOT_FOUND",
    ):
        if message is None:
            if resource_id is not None:
                message = f"{resource} '{resource_id}' not found"
            else:
                message = f"{resource} not found"

        details: Dict[str, Any] = {"resource": resource}
        if resource_id is not None:
            details["resource_id"] = resource_id

        super().__init__(message=message, error_code=error_code, details=details)


class ConflictError(ValidationError):
    """Raised when an insertion collides with existing state."""

    def __init__(self, message: str = "Resource already exists", error_code: str = "CONFLICT", details=None):
        super().__init__(message=message, error_code=error_code, details=details)


class ParseError(ShadowError):
    """Raised when an input file cannot be parsed."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        details: Dict[str, Any] = {}
        if path is not None:
            details["path"] = path
        if line is not None:
            details["line"] = line
            message = f"{path or '<input>'}:{line}: {message}"
        super().__init__(message=message, error_code="PARSE_ERROR", details=details, exit_code=2)
        self.path = path
        self.line = line


class StorageError(ShadowError):
    """Raised when reading or writing a file fails."""

    def __init__(self, message: str = "Storage operation failed", path: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="STORAGE_ERROR",
            details={"path": path} if path else {},
            exit_code=3,
        )


class NoSymptomsError(ShadowError):
    """Raised when an analysis run produced no alerts."""

    def __init__(self, message: str = "no symptoms detected"):
        super().__init__(message=message, error_code="NO_SYMPTOMS", exit_code=4)


# --- core model -----------------------------------------------------------


class DuplicateIdError(ConflictError):
    def __init__(self, member_id: str):
        super().__init__(f"Member '{member_id}' already exists", "DUPLICATE_ID", {"member": member_id})


class SchemaMismatchError(ValidationError):
    def __init__(self, message: str, member_id: Optional[str] = None):
        super().__init__(message, "SCHEMA_MISMATCH", {"member": member_id} if member_id else None)


class UnknownMemberError(NotFoundError):
    def __init__(self, member_id: str):
        super().__init__("Member", member_id, error_code="UNKNOWN_MEMBER")


class KindViolationError(ValidationError):
    def __init__(self, src: str, dst: str, message: Optional[str] = None):
        super().__init__(
            message or f"Edge {src} -> {dst} is not a send, publish or subscribe edge",
            "KIND_VIOLATION",
            {"src": src, "dst": dst},
        )


class TreeViolationError(ValidationError):
    def __init__(self, src: str, dst: str, layer: int, reason: str):
        super().__init__(
            f"Edge {src} -> {dst} on layer {layer} breaks the tree: {reason}",
            "TREE_VIOLATION",
            {"src": src, "dst": dst, "layer": layer},
        )


class SelfLoopError(ValidationError):
    def __init__(self, member_id: str, layer: int):
        super().__init__(
            f"Self-loop on '{member_id}' (layer {layer}) is not allowed",
            "SELF_LOOP",
            {"member": member_id, "layer": layer},
        )


class LayerOutOfRangeError(ValidationError):
    def __init__(self, layer: int, layer_count: int):
        super().__init__(
            f"Layer {layer} outside the valid range for {layer_count} layers",
            "LAYER_OUT_OF_RANGE",
            {"layer": layer, "layer_count": layer_count},
        )


class MultipleRootsError(ValidationError):
    def __init__(self, layer: int, roots: List[str]):
        super().__init__(
            f"Layer {layer} has {len(roots)} roots; expected exactly one",
            "MULTIPLE_ROOTS",
            {"layer": layer, "roots": roots},
        )


class EmptyTreeError(NotFoundError):
    def __init__(self, layer: int):
        super().__init__(
            "Tree layer", layer, message=f"Layer {layer} has no edges", error_code="EMPTY_TREE"
        )


class NotActiveError(ValidationError):
    def __init__(self, member_id: str):
        super().__init__(f"Member '{member_id}' is not active", "NOT_ACTIVE", {"member": member_id})


# --- aggregation ----------------------------------------------------------


class CycleDetectedError(ValidationError):
    def __init__(self, pids: List[int]):
        super().__init__(
            f"Process snapshot contains a parent cycle through {pids}",
            "CYCLE_DETECTED",
            {"pids": pids},
        )


class UnknownProcessError(NotFoundError):
    def __init__(self, pid: int):
        super().__init__("Process", pid, error_code="UNKNOWN_PROCESS")


class AlreadyBoundError(ConflictError):
    def __init__(self, member_id: str, parent: str):
        super().__init__(
            f"Member '{member_id}' is already bound under '{parent}'",
            "ALREADY_BOUND",
            {"member": member_id, "parent": parent},
        )


# --- detection ------------------------------------------------------------


class DuplicatePluginNameError(ConflictError):
    def __init__(self, name: str):
        super().__init__(f"Plugin '{name}' is already registered", "DUPLICATE_PLUGIN_NAME", {"plugin": name})


class PluginFailureError(ShadowError):
    """A plugin raised while evaluating a member. Never propagates out of a tick."""

    def __init__(self, plugin: str, member_id: str, cause: str):
        super().__init__(
            f"Plugin '{plugin}' failed on '{member_id}': {cause}",
            "PLUGIN_FAILURE",
            {"plugin": plugin, "member": member_id, "cause": cause},
        )
        self.plugin = plugin
        self.member_id = member_id


# --- subgraph -------------------------------------------------------------


class EmptySeedError(ValidationError):
    def __init__(self, message: str = "Watchlist seed is empty; the pipeline would be inert"):
        super().__init__(message, "EMPTY_SEED")


class NoProcessTreeError(NotFoundError):
    def __init__(self, layer: int):
        super().__init__(
            "Process tree", layer, message=f"No process tree on layer {layer}", error_code="NO_PROCESS_TREE"
        )


class NotWatchedError(ValidationError):
    def __init__(self, member_id: str):
        super().__init__(f"Member '{member_id}' is not on the watchlist", "NOT_WATCHED", {"member": member_id})


# --- trajectory -----------------------------------------------------------


class InsufficientDataError(ValidationError):
    def __init__(self, message: str = "Not enough lag samples", count: int = 0):
        super().__init__(message, "INSUFFICIENT_DATA", {"count": count})


class NotInSubgraphError(NotFoundError):
    def __init__(self, member_id: str):
        super().__init__(
            "Subgraph member", member_id, message=f"Member '{member_id}' is not in the extracted subgraph",
            error_code="NOT_IN_SUBGRAPH",
        )


class NoAlertsError(ValidationError):
    def __init__(self, member_id: str):
        super().__init__(f"Member '{member_id}' has no alerts", "NO_ALERTS", {"member": member_id})


# --- simulator ------------------------------------------------------------


class InvalidSpecError(ValidationError):
    def __init__(self, message: str):
        super().__init__(message, "INVALID_SPEC")


class UnknownFaultRootError(NotFoundError):
    def __init__(self, member_id: str):
        super().__init__("Fault root", member_id, error_code="UNKNOWN_FAULT_ROOT")
