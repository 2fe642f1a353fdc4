# shadowrca/infrastructure/plugins/threshold.py
"""
Static threshold plugin
"""
from typing import Literal, Mapping, Optional

from shadowrca.application.interfaces.symptom_plugin import History, SymptomPlugin
from shadowrca.domain.entities.alert import Symptom


class ThresholdPlugin(SymptomPlugin):
    """
    Alert when a field crosses a fixed threshold.

    Without a fixed severity the relative excess over the threshold is used,
    clipped to [0, 1]. Members whose schema lacks the field are skipped.
    """

    def __init__(
        self,
        name: str,
        field: str,
        threshold: float,
        direction: Literal["above", "below"] = "above",
        label: Optional[str] = None,
        severity: Optional[float] = None,
    ):
        self._name = name
        self.field = field
        self.threshold = threshold
        self.direction = direction
        self.label = label or name
        self.severity = severity

    @property
    def name(self) -> str:
        return self._name

    def evaluate(self, member_id: str, attrs: Mapping[str, float], history: History) -> Optional[Symptom]:
        value = attrs.get(self.field)
        if value is None:
            return None

        if self.direction == "above":
            crossed = value > self.threshold
        else:
            crossed = value < self.threshold
        if not crossed:
            return None

        return Symptom(self.label, self._severity_for(value))

    def _severity_for(self, value: float) -> float:
        if self.severity is not None:
            return self.severity
        if self.threshold == 0:
            return 1.0
        return min(1.0, abs(value - self.threshold) / abs(self.threshold))
