# shadowrca/domain/entities/trajectory.py
"""
Correlation and fault trajectory entities
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from shadowrca.core.error_handling.errors import ValidationError


class CorrelationMethod(Enum):
    """Symptom correlation methods usable in conjunction"""

    CO_OCCURRENCE = "cooccurrence"
    TIME_LAG = "timelag"

    @classmethod
    def parse(cls, value: str) -> Tuple["CorrelationMethod", ...]:
        """Parse a CLI toggle: cooccurrence, timelag or both"""
        if value == "both":
            return (cls.CO_OCCURRENCE, cls.TIME_LAG)
        return (cls(value),)


@dataclass(frozen=True)
class AlertSeries:
    """Sorted alert timestamps of one member"""

    member: str
    timestamps: Tuple[float, ...] = ()

    def __post_init__(self):
        if any(b < a for a, b in zip(self.timestamps, self.timestamps[1:])):
            raise ValidationError(f"Alert series of '{self.member}' is not sorted")

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class DependencyVerdict:
    """Whether `downstream`'s symptoms depend on `upstream`'s"""

    upstream: str
    downstream: str
    method: CorrelationMethod
    dependent: bool
    strength: float
    offset_or_lag: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.strength <= 1.0):
            raise ValidationError(f"strength must be within [0, 1], got {self.strength}")
        if not self.dependent and self.strength != 0.0:
            raise ValidationError("an independent verdict must have strength 0")

    @classmethod
    def independent(
        cls, upstream: str, downstream: str, method: CorrelationMethod, offset_or_lag: float = 0.0
    ) -> "DependencyVerdict":
        return cls(upstream, downstream, method, False, 0.0, offset_or_lag)


@dataclass(frozen=True)
class LagModel:
    """Empirical lag distribution between upstream and downstream symptoms"""

    mean_s: float = 0.0
    std_s: float = 0.0
    count: int = 0
    usable: bool = False
    histogram: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.std_s < 0 or self.count < 0:
            raise ValidationError("lag model std and count must be non-negative")


@dataclass(frozen=True)
class FaultTrajectory:
    """
    Ordered member chain from the initial symptom to a root-cause candidate.

    Consecutive members are joined by subgraph edges walked upstream;
    `methods[k]` names the methods that found hop k dependent.
    """

    members: Tuple[str, ...]
    strengths: Tuple[float, ...] = ()
    methods: Tuple[Tuple[str, ...], ...] = ()

    def __post_init__(self):
        if not self.members:
            raise ValidationError("A trajectory needs at least one member")
        if len(self.strengths) != len(self.members) - 1:
            raise ValidationError("One strength per hop is required")
        if len(set(self.members)) != len(self.members):
            raise ValidationError("A trajectory cannot revisit a member")

    @property
    def length(self) -> int:
        return len(self.members) - 1

    @property
    def avg_strength(self) -> float:
        # Length-0 trajectories carry no dependency evidence
        if not self.strengths:
            return 0.0
        return sum(self.strengths) / len(self.strengths)

    @property
    def initial(self) -> str:
        return self.members[0]

    @property
    def root_cause(self) -> str:
        return self.members[-1]


@dataclass(frozen=True)
class TraceResult:
    """Ranked trajectories plus the context they were extracted in"""

    initial: str
    trajectories: Tuple[FaultTrajectory, ...]
    lag_model: Optional[LagModel] = None
