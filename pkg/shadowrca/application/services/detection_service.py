# shadowrca/application/services/detection_service.py
"""
Plugin-based symptom detection over the watchlist
"""
from collections import deque
from types import MappingProxyType
from typing import Deque, Dict, Iterable, List, Mapping, Optional, Tuple

from shadowrca.application.interfaces.symptom_plugin import History, SymptomPlugin
from shadowrca.application.services.base_service import BaseService
from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.config import Settings
from shadowrca.core.error_handling.errors import PluginFailureError, UnknownMemberError
from shadowrca.domain.entities.alert import Alert, PluginFailure, Symptom
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.domain.repositories.alert_store import AlertStore
from shadowrca.monitoring.metrics import alerts_emitted_total, alerts_suppressed_total, plugin_failures_total

# Absorbs float error when comparing tick distances
_TIME_TOLERANCE = 1e-9


class DetectionService(BaseService):
    """
    Runs every registered plugin on every watched member once per tick.

    Keeps a bounded attribute history per member, collapses repeated
    (origin, label) alerts inside the refractory period and isolates
    plugin failures.
    """

    def __init__(
        self,
        registry: PluginRegistry,
        store: Optional[AlertStore] = None,
        history_size: Optional[int] = None,
        refractory_s: float = 0.0,
        settings: Optional[Settings] = None,
    ):
        super().__init__(settings=settings)
        self.registry = registry
        self.store = store if store is not None else AlertStore()
        self.history_size = history_size or self.settings.history_size
        self.refractory_s = refractory_s
        self._history: Dict[str, Deque[Mapping[str, float]]] = {}
        self._last_emitted: Dict[Tuple[str, str], float] = {}
        self._failures: List[PluginFailure] = []

    @property
    def failures(self) -> Tuple[PluginFailure, ...]:
        return tuple(self._failures)

    def history(self, member_id: str) -> Tuple[Mapping[str, float], ...]:
        """Previous attribute vectors of a member, oldest first"""
        return tuple(self._history.get(member_id, ()))

    def evaluate_tick(self, graph: SystemGraph, watchlist: Iterable[str], now: float) -> List[Alert]:
        """
        Evaluate the watchlist at time `now` and record the resulting alerts

        Members outside the watchlist are never evaluated. After evaluation
        the current attributes of every member are pushed onto its history window.

        Returns:
            Recorded alerts in (timestamp, origin, label) order
        """
        alerts: List[Alert] = []
        for member_id in sorted(watchlist):
            if not graph.has_member(member_id):
                raise UnknownMemberError(member_id)
            attrs = MappingProxyType(graph.attributes(member_id))
            history = self.history(member_id)
            for plugin in self.registry:
                symptom = self._run_plugin(plugin, member_id, attrs, history, now)
                if symptom is None:
                    continue
                alert = Alert.from_symptom(member_id, now, symptom)
                if self._suppressed(alert):
                    alerts_suppressed_total.labels(label=alert.label).inc()
                    continue
                self._last_emitted[(alert.origin, alert.label)] = alert.timestamp
                alerts.append(alert)

        alerts.sort()
        for alert in alerts:
            self.record(alert)

        for member in graph.members_in_order():
            window = self._history.setdefault(member.id, deque(maxlen=self.history_size))
            window.append(MappingProxyType(member.attrs))

        if alerts:
            self.logger.info("symptoms_detected", timestamp=now, count=len(alerts))
        return alerts

    def record(self, alert: Alert) -> AlertStore:
        """Append an alert to the store"""
        self.store.record(alert)
        self._last_emitted[(alert.origin, alert.label)] = alert.timestamp
        alerts_emitted_total.labels(label=alert.label).inc()
        return self.store

    # -- internals ---------------------------------------------------------

    def _run_plugin(
        self,
        plugin: SymptomPlugin,
        member_id: str,
        attrs: Mapping[str, float],
        history: History,
        now: float,
    ) -> Optional[Symptom]:
        try:
            symptom = plugin.evaluate(member_id, attrs, history)
            if symptom is not None and not isinstance(symptom, Symptom):
                raise TypeError(f"returned {type(symptom).__name__} instead of a Symptom")
            return symptom
        except Exception as e:
            failure = PluginFailureError(plugin.name, member_id, str(e) or type(e).__name__)
            self.logger.warning("plugin_failed", plugin=plugin.name, member=member_id, error=failure.message)
            plugin_failures_total.labels(plugin=plugin.name).inc()
            self._failures.append(PluginFailure(plugin.name, member_id, now, failure.details["cause"]))
            return None

    def _suppressed(self, alert: Alert) -> bool:
        last = self._last_emitted.get((alert.origin, alert.label))
        if last is None:
            return False
        elapsed = alert.timestamp - last
        # same tick always collapses, even with a zero period
        if elapsed <= _TIME_TOLERANCE:
            return True
        return elapsed < self.refractory_s - _TIME_TOLERANCE
