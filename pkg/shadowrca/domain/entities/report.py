# shadowrca/domain/entities/report.py
"""
Analysis outcome entity
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from shadowrca.domain.entities.alert import Alert, PluginFailure
from shadowrca.domain.entities.iteration_state import SubgraphSnapshot
from shadowrca.domain.entities.trajectory import FaultTrajectory, LagModel

STATUS_OK = "ok"
STATUS_NO_SYMPTOMS = "no symptoms detected"


@dataclass(frozen=True)
class AnalysisResult:
    """Everything one analysis run produced"""

    status: str
    trigger: str
    methods: Tuple[str, ...]
    snapshot: SubgraphSnapshot
    alert_count: int
    ticks: int
    initial: Optional[str] = None
    lag_model: Optional[LagModel] = None
    trajectories: Tuple[FaultTrajectory, ...] = ()
    failures: Tuple[PluginFailure, ...] = field(default_factory=tuple)
    alerts: Tuple[Alert, ...] = field(default_factory=tuple)

    @property
    def has_symptoms(self) -> bool:
        return self.status == STATUS_OK

    @property
    def root_cause_candidates(self) -> Tuple[str, ...]:
        """Distinct root-cause candidates in rank order"""
        return tuple(dict.fromkeys(t.root_cause for t in self.trajectories))
