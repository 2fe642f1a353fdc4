# shadowrca/domain/mappers/alert_mapper.py
"""
Data mapper for Alert entities (alert log lines)
"""
from typing import Any, Dict

from shadowrca.domain.entities.alert import Alert
from shadowrca.schemas.record_schemas import AlertDocument


class AlertDataMapper:
    """Mapper for converting between Alert entities and alert log records"""

    def to_dict(self, alert: Alert) -> Dict[str, Any]:
        return {
            "timestamp": alert.timestamp,
            "origin": alert.origin,
            "label": alert.label,
            "severity": alert.severity,
        }

    def from_dict(self, data: Dict[str, Any]) -> Alert:
        document = AlertDocument.model_validate(data)
        return Alert(
            timestamp=document.timestamp,
            origin=document.origin,
            label=document.label,
            severity=document.severity,
        )
