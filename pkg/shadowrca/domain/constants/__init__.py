from .layers import (
    COMM_LAYER,
    DEFAULT_LAYER_COUNT,
    PROCESS_LAYER,
    PROCESS_PREFIX,
    VIRTUAL_ROOT_ID,
    is_process_member,
    process_member_id,
)

__all__ = [
    "COMM_LAYER",
    "DEFAULT_LAYER_COUNT",
    "PROCESS_LAYER",
    "PROCESS_PREFIX",
    "VIRTUAL_ROOT_ID",
    "is_process_member",
    "process_member_id",
]
