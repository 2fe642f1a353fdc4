# shadowrca/infrastructure/plugins/zscore.py
"""
Z-score spike plugin over the history window
"""
from typing import Mapping, Optional

import numpy as np

from shadowrca.application.interfaces.symptom_plugin import History, SymptomPlugin
from shadowrca.domain.entities.alert import Symptom


class ZScorePlugin(SymptomPlugin):
    """Alert when the current value is more than `z` standard deviations from the window mean"""

    def __init__(self, name: str, field: str, z: float = 3.0, min_history: int = 8, label: Optional[str] = None):
        self._name = name
        self.field = field
        self.z = z
        self.min_history = min_history
        self.label = label or name

    @property
    def name(self) -> str:
        return self._name

    def evaluate(self, member_id: str, attrs: Mapping[str, float], history: History) -> Optional[Symptom]:
        value = attrs.get(self.field)
        if value is None:
            return None
        window = np.array([h[self.field] for h in history if self.field in h], dtype=float)
        if window.size < self.min_history:
            return None

        mean = float(window.mean())
        std = float(window.std())
        if std == 0.0:
            # A flat window makes any change a spike
            return Symptom(self.label, 1.0) if value != mean else None

        score = abs(value - mean) / std
        if score <= self.z:
            return None
        return Symptom(self.label, min(1.0, score / (2.0 * self.z)))
