# shadowrca/domain/entities/member.py
"""
Member, edge and attribute-schema value types of the system model
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

from shadowrca.core.error_handling.errors import SchemaMismatchError

# Ordered field name -> finite real value
AttributeVector = Dict[str, float]


class MemberKind(Enum):
    """Active members execute work, passive members distribute data"""

    ACTIVE = "active"
    PASSIVE = "passive"


class Direction(Enum):
    """Direction of a neighborhood query"""

    PREDECESSORS = "predecessors"
    SUCCESSORS = "successors"


class KindFilter(Enum):
    """Kind restriction of a neighborhood query"""

    ALL = "all"
    ACTIVE_ONLY = "active"
    PASSIVE_ONLY = "passive"

    def accepts(self, kind: MemberKind) -> bool:
        if self is KindFilter.ALL:
            return True
        if self is KindFilter.ACTIVE_ONLY:
            return kind is MemberKind.ACTIVE
        return kind is MemberKind.PASSIVE


class EdgeType(Enum):
    """Edge flavour derived from layer and endpoint kinds"""

    SEND = "send"
    PUBLISH = "publish"
    SUBSCRIBE = "subscribe"
    TREE = "tree"


@dataclass(frozen=True)
class AttributeSchema:
    """Attribute field names per member kind (dimension a for active, p for passive)"""

    active: Tuple[str, ...] = field(default_factory=tuple)
    passive: Tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for name, fields in (("active", self.active), ("passive", self.passive)):
            if len(set(fields)) != len(fields):
                raise SchemaMismatchError(f"Duplicate field in {name} schema: {list(fields)}")

    def fields_for(self, kind: MemberKind) -> Tuple[str, ...]:
        """Field names declared for a kind"""
        return self.active if kind is MemberKind.ACTIVE else self.passive

    def zero_vector(self, kind: MemberKind) -> AttributeVector:
        """All-zero attribute vector for a kind"""
        return {name: 0.0 for name in self.fields_for(kind)}

    def project(self, kind: MemberKind, values: Dict[str, float]) -> AttributeVector:
        """Project arbitrary metrics onto a kind's schema (absent fields are 0.0)"""
        return {name: float(values.get(name, 0.0)) for name in self.fields_for(kind)}


@dataclass(frozen=True, order=True)
class Edge:
    """Directed edge keyed by (src, dst, layer)"""

    src: str
    dst: str
    layer: int


@dataclass(frozen=True)
class Member:
    """Read-only member record returned by graph queries"""

    id: str
    kind: MemberKind
    attrs: AttributeVector

    @property
    def is_active(self) -> bool:
        return self.kind is MemberKind.ACTIVE
