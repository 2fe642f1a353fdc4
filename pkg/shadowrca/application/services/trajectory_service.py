# shadowrca/application/services/trajectory_service.py
"""
Fault trajectory extraction and ranking over an extracted subgraph
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from shadowrca.application.services.base_service import BaseService
from shadowrca.application.services.correlation_service import (
    CorrelationService,
    IcpParameters,
    LagParameters,
)
from shadowrca.application.services.decorators import log_execution
from shadowrca.config import Settings
from shadowrca.core.error_handling.errors import InsufficientDataError, NoAlertsError, NotInSubgraphError
from shadowrca.domain.entities.iteration_state import SubgraphSnapshot
from shadowrca.domain.entities.trajectory import AlertSeries, CorrelationMethod, FaultTrajectory, LagModel
from shadowrca.domain.repositories.alert_store import AlertStore, Window
from shadowrca.monitoring.metrics import trajectories_extracted_total

Hop = Tuple[float, Tuple[str, ...]]


@dataclass(frozen=True)
class TraceParameters:
    methods: Tuple[CorrelationMethod, ...] = (CorrelationMethod.CO_OCCURRENCE, CorrelationMethod.TIME_LAG)
    icp: IcpParameters = field(default_factory=IcpParameters)
    lag: LagParameters = field(default_factory=LagParameters)
    max_trajectories: int = 256


def extraction_window(snapshot: SubgraphSnapshot) -> Optional[Window]:
    """Alerts considered for a snapshot: everything up to its extraction time"""
    if snapshot.extracted_at is None:
        return None
    return (-math.inf, snapshot.extracted_at)


class TrajectoryService(BaseService):
    """Traces fault trajectories upstream from the initial symptom"""

    def __init__(self, correlation: Optional[CorrelationService] = None, settings: Optional[Settings] = None):
        super().__init__(settings=settings)
        self.correlation = correlation or CorrelationService(settings=self.settings)

    def choose_initial(
        self,
        snapshot: SubgraphSnapshot,
        store: AlertStore,
        strategy: str = "earliest",
        member: Optional[str] = None,
    ) -> str:
        """
        Pick the initial symptom member

        `member` wins when given. Otherwise "earliest" takes the origin of the
        earliest alert and "latest" the member whose first alert came last;
        ties go to the smaller member id.
        """
        if member is not None:
            if member not in snapshot.members:
                raise NotInSubgraphError(member)
            return member

        first = {
            m: t for m, t in store.first_alert_times(extraction_window(snapshot)).items() if m in snapshot.members
        }
        if not first:
            raise NoAlertsError("<subgraph>")
        if strategy == "latest":
            return min(first.items(), key=lambda item: (-item[1], item[0]))[0]
        return min(first.items(), key=lambda item: (item[1], item[0]))[0]

    def lag_model_for(self, snapshot: SubgraphSnapshot, store: AlertStore, params: LagParameters) -> LagModel:
        """Lag model estimated over the subgraph edges; unusable when data is short"""
        pairs = sorted((e.src, e.dst) for e in snapshot.edges)
        try:
            return self.correlation.estimate_lag_model(store, pairs, params, extraction_window(snapshot))
        except InsufficientDataError as e:
            self.logger.warning("lag_model_unusable", reason=e.message)
            return LagModel(count=e.details.get("count", 0), usable=False)

    @log_execution(stage="trace")
    def trace(
        self,
        snapshot: SubgraphSnapshot,
        store: AlertStore,
        initial: str,
        params: Optional[TraceParameters] = None,
        lag_model: Optional[LagModel] = None,
    ) -> List[FaultTrajectory]:
        """
        Depth-first walk over reversed subgraph edges from `initial`

        An edge (p -> current) extends a trajectory iff p has alerts and at
        least one enabled method finds (p, current) dependent; the hop
        strength is the best strength among those methods. A member without
        such a predecessor ends the trajectory as root-cause candidate.
        Members are never revisited within one trajectory.

        Raises:
            NotInSubgraphError: initial is not in the snapshot
            NoAlertsError: initial has no alerts
        """
        params = params or self._defaults()
        window = extraction_window(snapshot)
        if initial not in snapshot.members:
            raise NotInSubgraphError(initial)

        series_cache: Dict[str, AlertSeries] = {}

        def series(member: str) -> AlertSeries:
            if member not in series_cache:
                series_cache[member] = AlertSeries(member, tuple(store.series(member, window=window)))
            return series_cache[member]

        if not len(series(initial)):
            raise NoAlertsError(initial)

        if CorrelationMethod.TIME_LAG in params.methods and lag_model is None:
            lag_model = self.lag_model_for(snapshot, store, params.lag)

        hops: Dict[Tuple[str, str], Optional[Hop]] = {}

        def hop(upstream: str, downstream: str) -> Optional[Hop]:
            key = (upstream, downstream)
            if key not in hops:
                hops[key] = self._hop(series(upstream), series(downstream), params, lag_model)
            return hops[key]

        trajectories: List[FaultTrajectory] = []
        stack: List[Tuple[Tuple[str, ...], Tuple[float, ...], Tuple[Tuple[str, ...], ...]]] = [((initial,), (), ())]
        while stack:
            if len(trajectories) >= params.max_trajectories:
                self.logger.warning("trajectories_truncated", limit=params.max_trajectories)
                break
            path, strengths, methods = stack.pop()
            current = path[-1]
            extensions = []
            for upstream in snapshot.predecessors(current):
                if upstream in path or not len(series(upstream)):
                    continue
                found = hop(upstream, current)
                if found is not None:
                    extensions.append((upstream, found))

            if not extensions:
                trajectories.append(FaultTrajectory(path, strengths, methods))
                continue
            for upstream, (strength, names) in reversed(extensions):
                stack.append((path + (upstream,), strengths + (strength,), methods + (names,)))

        trajectories_extracted_total.inc(len(trajectories))
        self.logger.info("trajectories_traced", initial=initial, count=len(trajectories))
        return trajectories

    def rank(self, trajectories: Iterable[FaultTrajectory]) -> List[FaultTrajectory]:
        """Average strength descending, then length descending, then member sequence"""
        return sorted(trajectories, key=lambda t: (-t.avg_strength, -t.length, t.members, t.strengths, t.methods))

    # -- internals ---------------------------------------------------------

    def _hop(
        self,
        upstream: AlertSeries,
        downstream: AlertSeries,
        params: TraceParameters,
        lag_model: Optional[LagModel],
    ) -> Optional[Hop]:
        dependent = []
        for method in params.methods:
            if method is CorrelationMethod.CO_OCCURRENCE:
                verdict = self.correlation.co_occurrence(upstream, downstream, params.icp)
            else:
                if lag_model is None or not lag_model.usable:
                    continue
                try:
                    verdict = self.correlation.time_lag(upstream, downstream, lag_model, params.lag)
                except InsufficientDataError:
                    continue
            if verdict.dependent:
                dependent.append(verdict)

        if not dependent:
            return None
        return max(v.strength for v in dependent), tuple(v.method.value for v in dependent)

    def _defaults(self) -> TraceParameters:
        s = self.settings
        return TraceParameters(
            icp=IcpParameters(s.icp_max_iters, s.icp_match_window_s, s.icp_converge_eps_s, s.icp_max_offset_s),
            lag=LagParameters(max_lag_s=s.max_lag_s, epsilon_s=s.lag_epsilon_s, z_max=s.z_max),
            max_trajectories=s.max_trajectories,
        )


def parse_methods(names: Sequence[str]) -> Tuple[CorrelationMethod, ...]:
    """Correlation methods from config names or the CLI toggle"""
    methods: List[CorrelationMethod] = []
    for name in names:
        for method in CorrelationMethod.parse(name):
            if method not in methods:
                methods.append(method)
    return tuple(methods)
