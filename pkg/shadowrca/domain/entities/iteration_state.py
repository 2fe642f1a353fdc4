# shadowrca/domain/entities/iteration_state.py
"""
Subgraph iteration state and frozen snapshots
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Tuple

from shadowrca.domain.entities.member import Edge


@dataclass(frozen=True)
class ExpansionEvent:
    """Logged expansion: at iteration j an alert of `member` grew the subgraph"""

    j: int
    member: str
    timestamp: float | None = None


@dataclass(frozen=True)
class IterationState:
    """
    Subgraph state at iteration j.

    Values are immutable; every expansion returns a new state, so a state
    handed out as a snapshot can never change underneath its reader.
    """

    j: int = 0
    members: FrozenSet[str] = field(default_factory=frozenset)
    edges: FrozenSet[Edge] = field(default_factory=frozenset)
    watchlist: FrozenSet[str] = field(default_factory=frozenset)
    history: Tuple[ExpansionEvent, ...] = ()

    def endpoints_closed(self) -> bool:
        """Every edge has both endpoints among the members"""
        return all(e.src in self.members and e.dst in self.members for e in self.edges)

    def contains(self, other: "IterationState") -> bool:
        """Whether this state is a monotone successor of `other`"""
        return (
            other.members <= self.members
            and other.edges <= self.edges
            and other.watchlist <= self.watchlist
        )


@dataclass(frozen=True)
class SubgraphSnapshot:
    """Subgraph frozen at extraction, plus watchlist and expansion history"""

    j: int
    members: FrozenSet[str]
    edges: FrozenSet[Edge]
    watchlist: FrozenSet[str]
    history: Tuple[ExpansionEvent, ...]
    extracted_at: float | None = None

    @classmethod
    def of(cls, state: IterationState, extracted_at: float | None = None) -> "SubgraphSnapshot":
        return cls(
            j=state.j,
            members=state.members,
            edges=state.edges,
            watchlist=state.watchlist,
            history=state.history,
            extracted_at=extracted_at,
        )

    def predecessors(self, member_id: str) -> list:
        """Sorted upstream members with an edge into member_id"""
        return sorted(e.src for e in self.edges if e.dst == member_id)
