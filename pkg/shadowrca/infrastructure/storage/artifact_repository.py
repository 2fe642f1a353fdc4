# shadowrca/infrastructure/storage/artifact_repository.py
"""
Repository for run artifacts: topologies, event logs, snapshots, alerts,
state dumps, ground truth, lag models and reports
"""
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, TypeVar

from pydantic import ValidationError as PydanticValidationError

from shadowrca.application.interfaces.storage_provider import StorageProvider
from shadowrca.core.error_handling.errors import ParseError, ShadowError
from shadowrca.domain.entities.alert import Alert
from shadowrca.domain.entities.iteration_state import IterationState, SubgraphSnapshot
from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.domain.entities.scenario import EventRecord, GroundTruth
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.domain.entities.trajectory import LagModel
from shadowrca.domain.mappers.alert_mapper import AlertDataMapper
from shadowrca.domain.mappers.event_mapper import EventDataMapper, ProcessDataMapper
from shadowrca.domain.mappers.graph_mapper import GraphDataMapper
from shadowrca.domain.mappers.state_mapper import StateDataMapper
from shadowrca.domain.mappers.truth_mapper import GroundTruthDataMapper
from shadowrca.domain.repositories.alert_store import AlertStore
from shadowrca.infrastructure.storage.file_storage import FileStorage
from shadowrca.monitoring.logging_config import get_logger
from shadowrca.schemas.record_schemas import LagModelDocument

logger = get_logger(__name__)

T = TypeVar("T")


class ArtifactRepository:
    """Loads and saves every file format through one storage provider"""

    def __init__(self, storage: StorageProvider | None = None):
        self.storage = storage or FileStorage()
        self.graphs = GraphDataMapper()
        self.events = EventDataMapper()
        self.processes = ProcessDataMapper()
        self.alerts = AlertDataMapper()
        self.states = StateDataMapper()
        self.truths = GroundTruthDataMapper()

    # -- topology ----------------------------------------------------------

    def load_topology(self, path: Path) -> SystemGraph:
        data = self.storage.read_json(path)
        try:
            return self.graphs.from_dict(data, source=str(path))
        except ParseError:
            raise
        except ShadowError as e:
            raise ParseError(f"invalid topology: {e.message}", path=str(path)) from e

    def save_topology(self, path: Path, graph: SystemGraph) -> None:
        self.storage.write_json(path, self.graphs.to_dict(graph))

    # -- JSON Lines streams ------------------------------------------------

    def load_events(self, path: Path) -> List[EventRecord]:
        return self._load_lines(path, self.events.from_dict)

    def save_events(self, path: Path, events: Iterable[EventRecord]) -> None:
        self.storage.write_jsonl(path, (self.events.to_dict(e) for e in events))

    def load_processes(self, path: Path) -> List[ProcessRecord]:
        return self._load_lines(path, self.processes.from_dict)

    def save_processes(self, path: Path, records: Iterable[ProcessRecord]) -> None:
        self.storage.write_jsonl(path, (self.processes.to_dict(r) for r in records))

    def load_alerts(self, path: Path) -> AlertStore:
        return AlertStore(self._load_lines(path, self.alerts.from_dict))

    def save_alerts(self, path: Path, alerts: Iterable[Alert]) -> None:
        self.storage.write_jsonl(path, (self.alerts.to_dict(a) for a in alerts))

    # -- documents ---------------------------------------------------------

    def load_state(self, path: Path) -> SubgraphSnapshot:
        return self._load_document(path, self.states.from_dict, "state dump")

    def save_state(self, path: Path, state: IterationState | SubgraphSnapshot) -> None:
        self.storage.write_json(path, self.states.to_dict(state))

    def load_truth(self, path: Path) -> GroundTruth:
        return self._load_document(path, self.truths.from_dict, "ground truth")

    def save_truth(self, path: Path, truth: GroundTruth) -> None:
        self.storage.write_json(path, self.truths.to_dict(truth))

    def load_lag_model(self, path: Path) -> LagModel:
        """A supplied lag model is always treated as usable"""

        def convert(data: Dict[str, Any]) -> LagModel:
            document = LagModelDocument.model_validate(data)
            return LagModel(document.mean_s, document.std_s, document.count, True, dict(document.histogram))

        return self._load_document(path, convert, "lag model")

    def load_document(self, path: Path) -> Any:
        return self.storage.read_json(path)

    def save_document(self, path: Path, data: Any) -> None:
        self.storage.write_json(path, data)

    def save_text(self, path: Path, text: str) -> None:
        self.storage.write_text(path, text)

    # -- internals ---------------------------------------------------------

    def _load_lines(self, path: Path, convert: Callable[[Dict[str, Any]], T]) -> List[T]:
        items = []
        for line_no, record in self.storage.read_jsonl(path):
            try:
                items.append(convert(record))
            except PydanticValidationError as e:
                first = e.errors()[0]
                location = ".".join(str(part) for part in first["loc"])
                raise ParseError(f"{location}: {first['msg']}", path=str(path), line=line_no) from e
            except ShadowError as e:
                raise ParseError(e.message, path=str(path), line=line_no) from e
        logger.debug("records_loaded", path=str(path), count=len(items))
        return items

    def _load_document(self, path: Path, convert: Callable[[Dict[str, Any]], T], what: str) -> T:
        data = self.storage.read_json(path)
        try:
            return convert(data)
        except PydanticValidationError as e:
            raise ParseError(f"invalid {what}: {e.errors()[0]['msg']}", path=str(path)) from e
        except ShadowError as e:
            raise ParseError(f"invalid {what}: {e.message}", path=str(path)) from e
