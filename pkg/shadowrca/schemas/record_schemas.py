# shadowrca/schemas/record_schemas.py
"""
File-format schemas: topology, JSON Lines records, state dumps, lag models
"""
import math
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


def _finite_metrics(v: Dict[str, float]) -> Dict[str, float]:
    for name, value in v.items():
        if not math.isfinite(value):
            raise ValueError(f"metric '{name}' is not finite")
    return v


class AttributeSchemaDocument(BaseModel):
    """Field declarations per member kind plus the layer count N"""

    model_config = ConfigDict(extra="forbid")

    active: List[str] = Field(default_factory=list)
    passive: List[str] = Field(default_factory=list)
    layer_count: int = Field(default=2, ge=1)


class MemberDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1)
    kind: Literal["active", "passive"]
    attrs: Dict[str, float] = Field(default_factory=dict)


class EdgeDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    src: str = Field(..., min_length=1)
    dst: str = Field(..., min_length=1)
    layer: int = Field(default=0, ge=0)


class TopologyDocument(BaseModel):
    """Topology file: top-level keys schema, members, edges"""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    attribute_schema: AttributeSchemaDocument = Field(alias="schema")
    members: List[MemberDocument] = Field(default_factory=list)
    edges: List[EdgeDocument] = Field(default_factory=list)


class ProcessRecordDocument(BaseModel):
    """One process snapshot line"""

    pid: int = Field(..., gt=0)
    ppid: int = Field(default=0, ge=0)
    name: str = ""
    metrics: Dict[str, float] = Field(default_factory=dict)

    @field_validator("metrics")
    @classmethod
    def check_metrics(cls, v):
        return _finite_metrics(v)


class EventDocument(BaseModel):
    """One event log line: metrics of one member at one tick"""

    timestamp: float
    member: str = Field(..., min_length=1)
    metrics: Dict[str, float]

    @field_validator("metrics")
    @classmethod
    def check_metrics(cls, v):
        return _finite_metrics(v)


class AlertDocument(BaseModel):
    """One alert log line"""

    timestamp: float
    origin: str = Field(..., min_length=1)
    label: str = Field(..., min_length=1)
    severity: float = Field(default=1.0, ge=0.0, le=1.0)


class ExpansionEventDocument(BaseModel):
    j: int = Field(..., ge=0)
    member: str
    timestamp: Optional[float] = None


class StateDocument(BaseModel):
    """Subgraph state dump"""

    j: int = Field(..., ge=0)
    members: List[str] = Field(default_factory=list)
    edges: List[EdgeDocument] = Field(default_factory=list)
    watchlist: List[str] = Field(default_factory=list)
    history: List[ExpansionEventDocument] = Field(default_factory=list)
    extracted_at: Optional[float] = None


class LagModelDocument(BaseModel):
    """Lag model override file"""

    mean_s: float
    std_s: float = Field(..., ge=0.0)
    count: int = Field(default=0, ge=0)
    histogram: Dict[str, int] = Field(default_factory=dict)


class PropagationStepDocument(BaseModel):
    src: str
    dst: str
    onset_s: float


class GroundTruthDocument(BaseModel):
    root_causes: List[str]
    onsets: Dict[str, float]
    onset_ticks: Dict[str, float]
    propagation: List[PropagationStepDocument] = Field(default_factory=list)
