# shadowrca/schemas/scenario_schemas.py
"""
Simulator scenario and fault schemas
"""
from enum import Enum
from typing import Dict

from pydantic import BaseModel, ConfigDict, Field, model_validator

from shadowrca.domain.constants.metrics import CPU_FRACTION, DEFAULT_METRIC_MODELS


class TopologyKind(str, Enum):
    """Generated topology shapes"""

    CHAIN = "chain"
    TREE = "tree"
    DIAMOND = "diamond"
    RANDOM_DAG = "random_dag"


class MetricModel(BaseModel):
    """Gaussian metric model: baseline plus noise"""

    model_config = ConfigDict(extra="forbid")

    baseline: float
    noise_std: float = Field(default=0.0, ge=0.0)


class FaultEffect(BaseModel):
    """Which active metric field a fault perturbs and by how much"""

    model_config = ConfigDict(extra="forbid")

    field: str = Field(default=CPU_FRACTION)
    delta: float = Field(default=0.6)


class FaultSpec(BaseModel):
    """Root-cause fault injected at `root` from `start_s`"""

    model_config = ConfigDict(extra="forbid")

    root: str = Field(..., min_length=1)
    start_s: float = Field(default=1.0, ge=0.0)
    lag_mean_s: float = Field(default=0.5, ge=0.0, description="Per-edge propagation lag mean")
    lag_std_s: float = Field(default=0.05, ge=0.0, description="Per-edge propagation lag std")
    probability: float = Field(default=1.0, ge=0.0, le=1.0, description="Per-edge propagation probability")
    effect: FaultEffect = Field(default_factory=FaultEffect)


def _default_metrics() -> Dict[str, MetricModel]:
    return {name: MetricModel(**model) for name, model in DEFAULT_METRIC_MODELS.items()}


class ScenarioSpec(BaseModel):
    """Synthetic system description"""

    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0)
    topology: TopologyKind = Field(default=TopologyKind.CHAIN)
    size: int = Field(default=3, ge=1, description="Number of active members")
    distributor_density: float = Field(
        default=1.0, ge=0.0, le=1.0, description="Share of connections routed through a distributor"
    )
    fanout: int = Field(default=2, ge=1, description="Children per parent for tree topologies")
    edge_probability: float = Field(default=0.15, ge=0.0, le=1.0, description="Extra parent probability for DAGs")
    duration_s: float = Field(default=20.0, gt=0.0)
    tick_s: float = Field(default=0.1, gt=0.0)
    metrics: Dict[str, MetricModel] = Field(default_factory=_default_metrics)
    components_per_launcher: int = Field(default=5, ge=1)
    distributor_symptoms: bool = Field(default=True)
    distributor_effect: float = Field(default=20.0, description="queue_depth shift of traversed distributors")

    @model_validator(mode="after")
    def check_tick(self):
        if self.tick_s > self.duration_s:
            raise ValueError("tick_s must not exceed duration_s")
        return self
