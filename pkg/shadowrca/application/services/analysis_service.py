# shadowrca/application/services/analysis_service.py
"""
Offline analysis pipeline: replay an event log through detection, subgraph
growth and fault-trajectory extraction
"""
from itertools import groupby
from typing import List, Optional, Sequence

from shadowrca.application.interfaces.symptom_plugin import SymptomPlugin
from shadowrca.application.services.aggregation_service import AggregationService
from shadowrca.application.services.base_service import BaseService
from shadowrca.application.services.correlation_service import CorrelationService, IcpParameters, LagParameters
from shadowrca.application.services.decorators import log_execution
from shadowrca.application.services.detection_service import DetectionService
from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.application.services.subgraph_service import SubgraphService
from shadowrca.application.services.trajectory_service import TraceParameters, TrajectoryService, parse_methods
from shadowrca.config import Settings
from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.domain.constants.layers import is_process_member
from shadowrca.domain.entities.iteration_state import IterationState
from shadowrca.domain.entities.member import MemberKind
from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.domain.entities.report import STATUS_NO_SYMPTOMS, STATUS_OK, AnalysisResult
from shadowrca.domain.entities.scenario import EventRecord
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.domain.entities.trajectory import CorrelationMethod, LagModel
from shadowrca.schemas.config_schemas import CorrelationConfig, RunConfig

_TIME_TOLERANCE = 1e-9


class AnalysisService(BaseService):
    """Wires the detection, subgraph and trajectory services into one replay"""

    def __init__(self, settings: Optional[Settings] = None):
        super().__init__(settings=settings)
        self.aggregation = AggregationService(settings=self.settings)
        self.subgraphs = SubgraphService(settings=self.settings)
        self.trajectories = TrajectoryService(CorrelationService(settings=self.settings), settings=self.settings)

    @log_execution(stage="analyze")
    def analyze(
        self,
        graph: SystemGraph,
        events: Sequence[EventRecord],
        config: RunConfig,
        registry: PluginRegistry,
        anomaly_rule: Optional[SymptomPlugin] = None,
        processes: Optional[Sequence[ProcessRecord]] = None,
        lag_model: Optional[LagModel] = None,
    ) -> AnalysisResult:
        """
        Replay `events` tick by tick

        Per tick: apply the metric updates, evaluate the watchlist, record
        the alerts and expand the subgraph once per alert in (timestamp,
        origin) order. The subgraph is frozen when the quiescence window
        elapses after the last alert, at the demand time, or at the end of
        the log, then traced upstream from the initial symptom.

        Returns:
            AnalysisResult; its status is "no symptoms detected" when no
            alert was emitted
        """
        init = config.initialization
        if processes:
            self.aggregation.build_process_tree(graph, processes, init.process_layer)
        if init.bindings:
            self.aggregation.bind_processes(graph, init.bindings, init.process_layer)
        state = self._initial_state(graph, config, anomaly_rule)

        tick_s = self._tick_length(events)
        detection = DetectionService(
            registry,
            history_size=config.detection.history_size,
            refractory_s=config.detection.refractory_ticks * tick_s,
            settings=self.settings,
        )

        extraction = config.extraction
        trigger = "end_of_log" if extraction.trigger == "quiescence" else "demand"
        last_alert: Optional[float] = None
        now: Optional[float] = None
        ticks = 0
        for timestamp, batch in groupby(events, key=lambda e: e.timestamp):
            if extraction.trigger == "demand" and extraction.at_s is not None and timestamp > extraction.at_s:
                break
            for event in batch:
                attrs = graph.attributes(event.member)
                attrs.update(event.metrics)
                graph.update_attributes(event.member, attrs)

            alerts = detection.evaluate_tick(graph, state.watchlist, timestamp)
            for alert in alerts:
                state = self.subgraphs.expand(graph, state, alert.origin, alert.timestamp)
            if alerts:
                last_alert = timestamp
            now = timestamp
            ticks += 1

            if (
                extraction.trigger == "quiescence"
                and last_alert is not None
                and timestamp - last_alert >= extraction.quiescence_s - _TIME_TOLERANCE
            ):
                trigger = "quiescence"
                break

        snapshot = self.subgraphs.snapshot(state, extracted_at=now)
        store = detection.store
        methods = parse_methods(config.correlation.methods)
        common = dict(
            trigger=trigger,
            methods=tuple(m.value for m in methods),
            snapshot=snapshot,
            alert_count=len(store),
            ticks=ticks,
            failures=detection.failures,
            alerts=store.alerts(),
        )
        if not len(store):
            self.logger.warning("no_symptoms_detected", ticks=ticks)
            return AnalysisResult(status=STATUS_NO_SYMPTOMS, **common)

        params = self._trace_parameters(config.correlation, methods)
        initial = self.trajectories.choose_initial(
            snapshot, store, extraction.initial_strategy, extraction.initial_member
        )
        if CorrelationMethod.TIME_LAG in methods and lag_model is None:
            lag_model = self.trajectories.lag_model_for(snapshot, store, params.lag)
        ranked = self.trajectories.rank(self.trajectories.trace(snapshot, store, initial, params, lag_model))

        self.logger.info(
            "analysis_completed",
            trigger=trigger,
            alerts=len(store),
            initial=initial,
            trajectories=len(ranked),
            top_root_cause=ranked[0].root_cause if ranked else None,
        )
        return AnalysisResult(
            status=STATUS_OK,
            initial=initial,
            lag_model=lag_model,
            trajectories=tuple(ranked),
            **common,
        )

    # -- internals ---------------------------------------------------------

    def _initial_state(
        self,
        graph: SystemGraph,
        config: RunConfig,
        anomaly_rule: Optional[SymptomPlugin],
    ) -> IterationState:
        init = config.initialization
        if init.mode == "process_anomaly":
            if anomaly_rule is None:
                raise ValidationError("process_anomaly initialization needs an anomaly rule")
            return self.subgraphs.init_from_process_anomaly(graph, anomaly_rule, init.process_layer)

        seeds: List[str] = list(init.seed_members)
        if init.seed_all_components:
            seeds += [m for m in graph.members(MemberKind.ACTIVE) if not is_process_member(m)]
        return self.subgraphs.init_from_config(graph, seeds)

    @staticmethod
    def _tick_length(events: Sequence[EventRecord]) -> float:
        """Smallest gap between consecutive distinct timestamps; 0 for a single tick"""
        tick = 0.0
        previous: Optional[float] = None
        for event in events:
            if previous is not None:
                if event.timestamp < previous:
                    raise ValidationError(
                        f"Event log is not ordered by timestamp ({event.timestamp} after {previous})",
                        "UNORDERED_EVENTS",
                    )
                gap = event.timestamp - previous
                if gap > 0 and (tick == 0.0 or gap < tick):
                    tick = gap
            previous = event.timestamp
        return tick

    @staticmethod
    def _trace_parameters(
        correlation: CorrelationConfig,
        methods: Sequence[CorrelationMethod],
    ) -> TraceParameters:
        return TraceParameters(
            methods=tuple(methods),
            icp=IcpParameters(
                max_iters=correlation.max_iters,
                match_window_s=correlation.match_window_s,
                converge_eps_s=correlation.converge_eps_s,
                max_offset_s=correlation.max_offset_s,
            ),
            lag=LagParameters(
                max_lag_s=correlation.max_lag_s,
                epsilon_s=correlation.epsilon_s,
                z_max=correlation.z_max,
                episode_gap_s=correlation.episode_gap_s,
            ),
            max_trajectories=correlation.max_trajectories,
        )
