# shadowrca/domain/entities/alert.py
"""
Symptom and alert domain entities
"""
import math
from dataclasses import dataclass

from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.utils.validators import validate_unit_interval


@dataclass(frozen=True)
class Symptom:
    """An indicator of a failure, as returned by a plugin"""

    label: str
    severity: float = 1.0

    def __post_init__(self):
        if not self.label:
            raise ValidationError("Symptom label cannot be empty")
        validate_unit_interval(self.severity, "severity")


@dataclass(frozen=True, order=True)
class Alert:
    """
    Timestamped symptom record for one member.

    Ordering is (timestamp, origin, label, severity), the processing order of
    alerts raised within one tick.
    """

    timestamp: float
    origin: str
    label: str
    severity: float = 1.0

    def __post_init__(self):
        if not self.origin:
            raise ValidationError("Alert origin cannot be empty")
        if not math.isfinite(self.timestamp):
            raise ValidationError("Alert timestamp must be finite")
        validate_unit_interval(self.severity, "severity")

    @classmethod
    def from_symptom(cls, origin: str, timestamp: float, symptom: Symptom) -> "Alert":
        return cls(timestamp=timestamp, origin=origin, label=symptom.label, severity=symptom.severity)


@dataclass(frozen=True)
class PluginFailure:
    """An isolated plugin error, reported instead of propagated"""

    plugin: str
    member: str
    timestamp: float
    error: str
