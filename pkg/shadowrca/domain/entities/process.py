# shadowrca/domain/entities/process.py
"""
Process snapshot and accumulation entities
"""
from dataclasses import dataclass, field
from typing import Dict

from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.domain.entities.member import AttributeVector


@dataclass(frozen=True)
class ProcessRecord:
    """One row of an OS process table snapshot (ppid 0 means no parent)"""

    pid: int
    ppid: int
    name: str = ""
    metrics: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.pid <= 0:
            raise ValidationError(f"pid must be positive, got {self.pid}")
        if self.ppid < 0:
            raise ValidationError(f"ppid must be non-negative, got {self.ppid}")
        if self.ppid == self.pid:
            raise ValidationError(f"Process {self.pid} cannot be its own parent")


@dataclass(frozen=True)
class ProcessTreeBuild:
    """Outcome of building a process tree into a graph"""

    layer: int
    roots: tuple
    virtual_root: bool


@dataclass(frozen=True)
class AccumulationResult:
    """
    Accumulated subtree totals for every member of one tree layer.

    A total covers the subtree strictly below the member, so the member's
    own attributes are never included and a leaf totals the zero vector.
    """

    layer: int
    fields: tuple
    values: Dict[str, AttributeVector]

    def __getitem__(self, member_id: str) -> AttributeVector:
        return self.values[member_id]

    def __contains__(self, member_id: object) -> bool:
        return member_id in self.values
