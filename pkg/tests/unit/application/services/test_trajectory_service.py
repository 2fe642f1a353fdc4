# tests/unit/application/services/test_trajectory_service.py
"""
Tests for TrajectoryService
"""
import random
from collections import Counter

import pytest

from shadowrca.application.services.trajectory_service import TraceParameters, TrajectoryService, parse_methods
from shadowrca.core.error_handling.errors import NoAlertsError, NotInSubgraphError
from shadowrca.domain.entities.alert import Alert
from shadowrca.domain.entities.iteration_state import SubgraphSnapshot
from shadowrca.domain.entities.member import Edge
from shadowrca.domain.entities.trajectory import CorrelationMethod, FaultTrajectory
from shadowrca.domain.repositories.alert_store import AlertStore

CO_OCCURRENCE_ONLY = TraceParameters(methods=(CorrelationMethod.CO_OCCURRENCE,))


def snapshot_of(edges, extracted_at=None):
    members = {m for e in edges for m in e}
    return SubgraphSnapshot(
        j=len(members),
        members=frozenset(members),
        edges=frozenset(Edge(src, dst, 0) for src, dst in edges),
        watchlist=frozenset(members),
        history=(),
        extracted_at=extracted_at,
    )


def saturated(member, start, end=10.0, tick=0.1):
    """One alert per tick from start until end"""
    count = int(round((end - start) / tick))
    return [Alert(round(start + k * tick, 9), member, "high") for k in range(count)]


@pytest.fixture
def service():
    return TrajectoryService()


@pytest.fixture
def chain_store():
    return AlertStore(sorted(saturated("a", 1.0) + saturated("t", 1.1) + saturated("b", 1.6)))


class TestChooseInitial:
    def test_strategies(self, service, chain_store):
        snapshot = snapshot_of([("a", "t"), ("t", "b")])
        assert service.choose_initial(snapshot, chain_store) == "a"
        assert service.choose_initial(snapshot, chain_store, "latest") == "b"
        assert service.choose_initial(snapshot, chain_store, member="t") == "t"

    def test_explicit_member_outside_subgraph(self, service, chain_store):
        with pytest.raises(NotInSubgraphError):
            service.choose_initial(snapshot_of([("a", "t")]), chain_store, member="zzz")

    def test_no_alerts(self, service):
        with pytest.raises(NoAlertsError):
            service.choose_initial(snapshot_of([("a", "t")]), AlertStore())

    def test_alerts_after_extraction_ignored(self, service, chain_store):
        snapshot = snapshot_of([("a", "t"), ("t", "b")], extracted_at=1.2)
        assert service.choose_initial(snapshot, chain_store, "latest") == "t"


class TestTrace:
    def test_chain_ends_at_root(self, service, chain_store):
        snapshot = snapshot_of([("a", "t"), ("t", "b")])
        trajectories = service.trace(snapshot, chain_store, "b", CO_OCCURRENCE_ONLY)
        assert len(trajectories) == 1
        assert trajectories[0].members == ("b", "t", "a")
        assert trajectories[0].methods == (("cooccurrence",), ("cooccurrence",))
        assert all(0.0 < s <= 1.0 for s in trajectories[0].strengths)

    def test_isolated_initial(self, service):
        store = AlertStore([Alert(1.0, "a", "x")])
        snapshot = snapshot_of([("a", "b")])
        assert service.trace(snapshot, store, "a") == [FaultTrajectory(("a",))]

    def test_predecessor_without_alerts_is_skipped(self, service):
        store = AlertStore(saturated("b", 1.0))
        trajectories = service.trace(snapshot_of([("a", "b")]), store, "b", CO_OCCURRENCE_ONLY)
        assert [t.members for t in trajectories] == [("b",)]

    def test_initial_without_alerts(self, service):
        with pytest.raises(NoAlertsError):
            service.trace(snapshot_of([("a", "b")]), AlertStore(saturated("a", 1.0)), "b")

    def test_initial_outside_subgraph(self, service, chain_store):
        with pytest.raises(NotInSubgraphError):
            service.trace(snapshot_of([("a", "t")]), chain_store, "zzz")

    def test_diamond_branches(self, service):
        alerts = saturated("root", 1.0) + saturated("left", 1.5) + saturated("right", 1.5)
        alerts += saturated("sink", 2.0)
        store = AlertStore(sorted(alerts))
        snapshot = snapshot_of([("root", "left"), ("root", "right"), ("left", "sink"), ("right", "sink")])
        ranked = service.rank(service.trace(snapshot, store, "sink", CO_OCCURRENCE_ONLY))
        assert {t.members for t in ranked} == {("sink", "left", "root"), ("sink", "right", "root")}
        assert {t.root_cause for t in ranked} == {"root"}

    def test_time_lag_only_uses_lag_model(self, service, chain_store):
        snapshot = snapshot_of([("a", "t"), ("t", "b")])
        params = TraceParameters(methods=(CorrelationMethod.TIME_LAG,))
        trajectories = service.trace(snapshot, chain_store, "b", params)
        assert trajectories
        assert all(names == ("timelag",) for t in trajectories for names in t.methods)

    def test_max_trajectories(self, service):
        # Fan-in of four independent upstream chains into one sink
        alerts = saturated("sink", 2.0)
        edges = []
        for k in range(4):
            alerts += saturated(f"u{k}", 1.5)
            edges.append((f"u{k}", "sink"))
        store = AlertStore(sorted(alerts))
        params = TraceParameters(methods=(CorrelationMethod.CO_OCCURRENCE,), max_trajectories=2)
        assert len(service.trace(snapshot_of(edges), store, "sink", params)) == 2


class TestRank:
    """Ranking is a deterministic permutation"""

    CASES = 1000

    def test_rank_order(self, service):
        short = FaultTrajectory(("a", "b"), (0.5,))
        long = FaultTrajectory(("a", "c", "d"), (0.5, 0.5))
        strong = FaultTrajectory(("a", "e"), (0.9,))
        assert service.rank([short, long, strong]) == [strong, long, short]

    def test_permutation_and_determinism(self, service):
        rng = random.Random(8)
        names = "abcdefghij"
        for _ in range(self.CASES):
            trajectories = []
            for _ in range(rng.randint(0, 12)):
                length = rng.randint(0, 4)
                members = tuple(rng.sample(names, length + 1))
                strengths = tuple(rng.choice([0.25, 0.5, 0.75, 1.0]) for _ in range(length))
                trajectories.append(FaultTrajectory(members, strengths))

            ranked = service.rank(trajectories)
            shuffled = trajectories[:]
            rng.shuffle(shuffled)
            assert Counter(ranked) == Counter(trajectories)
            assert service.rank(shuffled) == ranked
            for first, second in zip(ranked, ranked[1:]):
                assert (-first.avg_strength, -first.length, first.members) <= (
                    -second.avg_strength,
                    -second.length,
                    second.members,
                )


def test_parse_methods():
    assert parse_methods(["both", "timelag"]) == (CorrelationMethod.CO_OCCURRENCE, CorrelationMethod.TIME_LAG)
    assert parse_methods(["timelag"]) == (CorrelationMethod.TIME_LAG,)
