# shadowrca/domain/mappers/state_mapper.py
"""
Data mapper for subgraph state dumps
"""
from typing import Any, Dict, Union

from shadowrca.domain.entities.iteration_state import ExpansionEvent, IterationState, SubgraphSnapshot
from shadowrca.domain.entities.member import Edge
from shadowrca.schemas.record_schemas import StateDocument


class StateDataMapper:
    """Mapper for converting between subgraph states and state dump dicts"""

    def to_dict(self, state: Union[IterationState, SubgraphSnapshot]) -> Dict[str, Any]:
        """
        Convert an iteration state or snapshot to a state dump

        Sets are emitted sorted; history keeps expansion order.
        """
        data: Dict[str, Any] = {
            "j": state.j,
            "members": sorted(state.members),
            "edges": [{"src": e.src, "dst": e.dst, "layer": e.layer} for e in sorted(state.edges)],
            "watchlist": sorted(state.watchlist),
            "history": [
                {"j": event.j, "member": event.member, "timestamp": event.timestamp}
                for event in state.history
            ],
        }
        if isinstance(state, SubgraphSnapshot):
            data["extracted_at"] = state.extracted_at
        return data

    def from_dict(self, data: Dict[str, Any]) -> SubgraphSnapshot:
        """Convert a state dump to a frozen snapshot"""
        document = StateDocument.model_validate(data)
        return SubgraphSnapshot(
            j=document.j,
            members=frozenset(document.members),
            edges=frozenset(Edge(e.src, e.dst, e.layer) for e in document.edges),
            watchlist=frozenset(document.watchlist),
            history=tuple(ExpansionEvent(h.j, h.member, h.timestamp) for h in document.history),
            extracted_at=document.extracted_at,
        )
