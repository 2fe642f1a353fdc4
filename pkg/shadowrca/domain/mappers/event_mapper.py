# shadowrca/domain/mappers/event_mapper.py
"""
Data mappers for event log lines and process snapshot lines
"""
from typing import Any, Dict

from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.domain.entities.scenario import EventRecord
from shadowrca.schemas.record_schemas import EventDocument, ProcessRecordDocument


class EventDataMapper:
    """Mapper for converting between EventRecord entities and event log records"""

    def to_dict(self, event: EventRecord) -> Dict[str, Any]:
        return {"timestamp": event.timestamp, "member": event.member, "metrics": dict(event.metrics)}

    def from_dict(self, data: Dict[str, Any]) -> EventRecord:
        document = EventDocument.model_validate(data)
        return EventRecord(timestamp=document.timestamp, member=document.member, metrics=document.metrics)


class ProcessDataMapper:
    """Mapper for converting between ProcessRecord entities and snapshot records"""

    def to_dict(self, record: ProcessRecord) -> Dict[str, Any]:
        return {
            "pid": record.pid,
            "ppid": record.ppid,
            "name": record.name,
            "metrics": dict(record.metrics),
        }

    def from_dict(self, data: Dict[str, Any]) -> ProcessRecord:
        document = ProcessRecordDocument.model_validate(data)
        return ProcessRecord(
            pid=document.pid,
            ppid=document.ppid,
            name=document.name,
            metrics=document.metrics,
        )
