# shadowrca/application/interfaces/symptom_plugin.py
"""
Symptom plugin interface
"""
from abc import ABC, abstractmethod
from typing import Mapping, Optional, Sequence

from shadowrca.domain.entities.alert import Symptom

History = Sequence[Mapping[str, float]]


class SymptomPlugin(ABC):
    """
    Expert-supplied symptom rule.

    `evaluate` receives a watched member's current attribute vector and the
    bounded window of its previous vectors (oldest first, current excluded).
    It must be deterministic and must not mutate its inputs.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique plugin name within a registry"""

    @abstractmethod
    def evaluate(self, member_id: str, attrs: Mapping[str, float], history: History) -> Optional[Symptom]:
        """Return a symptom, or None when the member looks nominal"""
