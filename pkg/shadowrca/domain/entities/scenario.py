# shadowrca/domain/entities/scenario.py
"""
Simulator output entities: metric events and injected-fault ground truth
"""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from shadowrca.domain.entities.member import AttributeVector


@dataclass(frozen=True)
class EventRecord:
    """Metric sample of one member at one tick"""

    timestamp: float
    member: str
    metrics: AttributeVector


@dataclass(frozen=True)
class PropagationStep:
    """The fault crossed `src -> dst` and reached dst at `onset_s`"""

    src: str
    dst: str
    onset_s: float


@dataclass
class GroundTruth:
    """
    What the simulator actually injected.

    `onsets` holds the earliest fault onset per perturbed member and
    `onset_ticks` the first tick at which the perturbation is visible.
    Members the fault crossed without perturbing them appear only in
    `propagation`.
    """

    root_causes: List[str] = field(default_factory=list)
    onsets: Dict[str, float] = field(default_factory=dict)
    onset_ticks: Dict[str, float] = field(default_factory=dict)
    propagation: List[PropagationStep] = field(default_factory=list)

    @property
    def root_cause(self) -> str | None:
        return self.root_causes[0] if self.root_causes else None

    @property
    def affected(self) -> Tuple[str, ...]:
        return tuple(sorted(self.onsets))
