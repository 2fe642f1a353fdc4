# shadowrca/domain/constants/layers.py
"""
Layer and naming conventions shared by the model, aggregation and simulator
"""

# Layer 0 always carries communication edges
COMM_LAYER = 0
# Layer 1 is reserved for the process tree by convention
PROCESS_LAYER = 1
DEFAULT_LAYER_COUNT = 2

PROCESS_PREFIX = "proc:"
VIRTUAL_ROOT_ID = "proc:virtual-root"


def process_member_id(pid: int) -> str:
    """Member id of the process with the given pid"""
    return f"{PROCESS_PREFIX}{pid}"


def is_process_member(member_id: str) -> bool:
    """Whether a member id names a process member"""
    return member_id.startswith(PROCESS_PREFIX)
