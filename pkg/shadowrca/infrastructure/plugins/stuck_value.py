# shadowrca/infrastructure/plugins/stuck_value.py
"""
Stuck value plugin
"""
from typing import Mapping, Optional

from shadowrca.application.interfaces.symptom_plugin import History, SymptomPlugin
from shadowrca.domain.entities.alert import Symptom


class StuckValuePlugin(SymptomPlugin):
    """Alert when a field has not moved beyond `tolerance` over the whole history window"""

    def __init__(
        self,
        name: str,
        field: str,
        tolerance: float = 0.0,
        min_history: int = 8,
        label: Optional[str] = None,
    ):
        self._name = name
        self.field = field
        self.tolerance = tolerance
        self.min_history = min_history
        self.label = label or name

    @property
    def name(self) -> str:
        return self._name

    def evaluate(self, member_id: str, attrs: Mapping[str, float], history: History) -> Optional[Symptom]:
        value = attrs.get(self.field)
        if value is None:
            return None
        window = [h[self.field] for h in history if self.field in h]
        if len(window) < self.min_history:
            return None
        if all(abs(v - value) <= self.tolerance for v in window):
            return Symptom(self.label, 1.0)
        return None
