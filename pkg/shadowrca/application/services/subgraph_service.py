# shadowrca/application/services/subgraph_service.py
"""
Alert-driven subgraph and watchlist
"""
from typing import Iterable, Optional

from shadowrca.application.interfaces.symptom_plugin import SymptomPlugin
from shadowrca.application.services.aggregation_service import AggregationService
from shadowrca.application.services.base_service import BaseService
from shadowrca.core.error_handling.errors import (
    EmptySeedError,
    EmptyTreeError,
    NoProcessTreeError,
    NotWatchedError,
    UnknownMemberError,
    ValidationError,
)
from shadowrca.domain.constants.layers import COMM_LAYER, PROCESS_LAYER
from shadowrca.domain.entities.iteration_state import ExpansionEvent, IterationState, SubgraphSnapshot
from shadowrca.domain.entities.member import Direction, Edge
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.monitoring.metrics import subgraph_expansions_total


class SubgraphService(BaseService):
    """Initializes, expands and freezes the alert-driven subgraph"""

    def init_from_config(self, graph: SystemGraph, seed_members: Iterable[str]) -> IterationState:
        """
        The watchlist starts as the configured seed set; members and edges start empty

        Raises:
            UnknownMemberError: a seed is not a graph member
            EmptySeedError: no seeds were given
        """
        seeds = frozenset(seed_members)
        for member_id in sorted(seeds):
            if not graph.has_member(member_id):
                raise UnknownMemberError(member_id)
        if not seeds:
            raise EmptySeedError()
        self.logger.info("watchlist_seeded", mode="config", size=len(seeds))
        return IterationState(watchlist=seeds)

    def init_from_process_anomaly(
        self,
        graph: SystemGraph,
        anomaly_rule: SymptomPlugin,
        process_layer: int = PROCESS_LAYER,
    ) -> IterationState:
        """
        Seed the watchlist with every bound component whose process triggers `anomaly_rule`

        Anomalous processes without a bound component stay out of the watchlist. An
        empty result is logged as a warning, not raised.

        Raises:
            NoProcessTreeError: the process layer has no edges
        """
        try:
            graph.tree_subgraph(process_layer)
        except EmptyTreeError:
            raise NoProcessTreeError(process_layer) from None

        bindings = AggregationService(settings=self.settings).bound_components(graph, process_layer)
        seeds = set()
        for component, process_id in sorted(bindings.items()):
            if anomaly_rule.evaluate(process_id, graph.attributes(process_id), ()) is not None:
                seeds.add(component)

        if not seeds:
            self.logger.warning("empty_seed", mode="process_anomaly", message=EmptySeedError().message)
        else:
            self.logger.info("watchlist_seeded", mode="process_anomaly", size=len(seeds))
        return IterationState(watchlist=frozenset(seeds))

    def expand(
        self,
        graph: SystemGraph,
        state: IterationState,
        m_alert: str,
        timestamp: Optional[float] = None,
    ) -> IterationState:
        """
        Apply one expansion step for an alert of `m_alert`

        m_alert joins the members, every layer-0 edge into m_alert from a
        current member joins the edges, and every layer-0 successor of
        m_alert joins the watchlist.

        Raises:
            NotWatchedError: m_alert is not watched
        """
        if m_alert not in state.watchlist:
            raise NotWatchedError(m_alert)

        incoming = graph.neighbors(m_alert, Direction.PREDECESSORS) & state.members
        successors = graph.neighbors(m_alert, Direction.SUCCESSORS)
        next_state = IterationState(
            j=state.j + 1,
            members=state.members | {m_alert},
            edges=state.edges | {Edge(m, m_alert, COMM_LAYER) for m in incoming},
            watchlist=state.watchlist | successors,
            history=state.history + (ExpansionEvent(state.j, m_alert, timestamp),),
        )
        subgraph_expansions_total.inc()
        self.logger.debug(
            "subgraph_expanded",
            j=next_state.j,
            member=m_alert,
            members=len(next_state.members),
            edges=len(next_state.edges),
            watchlist=len(next_state.watchlist),
        )
        return next_state

    def snapshot(self, state: IterationState, extracted_at: Optional[float] = None) -> SubgraphSnapshot:
        """Freeze the current subgraph with its watchlist and history"""
        self.logger.info(
            "subgraph_extracted", j=state.j, members=len(state.members), edges=len(state.edges)
        )
        return SubgraphSnapshot.of(state, extracted_at)

    def replay(
        self,
        graph: SystemGraph,
        initial: IterationState,
        history: Iterable[ExpansionEvent],
    ) -> IterationState:
        """Re-apply logged expansion events from an initial state"""
        state = initial
        for event in history:
            if event.j != state.j:
                raise ValidationError(
                    f"Expansion history is out of sequence: expected j={state.j}, got j={event.j}",
                    "HISTORY_OUT_OF_SEQUENCE",
                )
            state = self.expand(graph, state, event.member, event.timestamp)
        return state
