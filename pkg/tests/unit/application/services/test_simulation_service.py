# tests/unit/application/services/test_simulation_service.py
"""
Tests for SimulationService
"""
import numpy as np
import pytest

from shadowrca.application.services.simulation_service import (
    COMPONENT_PID_BASE,
    LAUNCHER_PID_BASE,
    SimulationService,
)
from shadowrca.core.error_handling.errors import InvalidSpecError, UnknownFaultRootError
from shadowrca.domain.constants.layers import VIRTUAL_ROOT_ID
from shadowrca.domain.entities.member import Direction, MemberKind
from shadowrca.schemas.scenario_schemas import FaultSpec, ScenarioSpec, TopologyKind


@pytest.fixture
def simulator():
    return SimulationService()


def comm_members(graph):
    return sorted(m for m in graph.members() if not m.startswith("proc:"))


class TestGenerateTopology:
    def test_chain_with_distributors(self, simulator):
        graph = simulator.generate_topology(ScenarioSpec(size=3))
        assert comm_members(graph) == ["node_00", "node_01", "node_02", "topic_00", "topic_01"]
        assert [(e.src, e.dst) for e in graph.edges(0)] == [
            ("node_00", "topic_00"),
            ("node_01", "topic_01"),
            ("topic_00", "node_01"),
            ("topic_01", "node_02"),
        ]

    def test_chain_without_distributors(self, simulator):
        graph = simulator.generate_topology(ScenarioSpec(size=3, distributor_density=0.0))
        assert graph.members(MemberKind.PASSIVE) == []
        assert [(e.src, e.dst) for e in graph.edges(0)] == [("node_00", "node_01"), ("node_01", "node_02")]

    def test_tree_fanout(self, simulator):
        graph = simulator.generate_topology(
            ScenarioSpec(topology=TopologyKind.TREE, size=7, fanout=2, distributor_density=0.0)
        )
        parents = {e.dst: e.src for e in graph.edges(0)}
        assert parents["node_01"] == parents["node_02"] == "node_00"
        assert parents["node_05"] == parents["node_06"] == "node_02"

    def test_diamond(self, simulator):
        graph = simulator.generate_topology(
            ScenarioSpec(topology=TopologyKind.DIAMOND, size=4, distributor_density=0.0)
        )
        assert {(e.src, e.dst) for e in graph.edges(0)} == {
            ("node_00", "node_01"),
            ("node_00", "node_02"),
            ("node_01", "node_03"),
            ("node_02", "node_03"),
        }

    def test_random_dag_is_acyclic_and_connected_downstream(self, simulator):
        graph = simulator.generate_topology(ScenarioSpec(topology=TopologyKind.RANDOM_DAG, size=20, seed=3))
        graph.validate()
        for i in range(1, 20):
            assert graph.neighbors(f"node_{i:02d}", Direction.PREDECESSORS)

    def test_process_tree(self, simulator):
        graph = simulator.generate_topology(ScenarioSpec(size=7, components_per_launcher=5))
        tree = graph.tree_subgraph(1)
        assert tree.root == VIRTUAL_ROOT_ID
        assert tree.children(VIRTUAL_ROOT_ID) == (f"proc:{LAUNCHER_PID_BASE}", f"proc:{LAUNCHER_PID_BASE + 1}")
        assert graph.parent("node_06", 1) == f"proc:{COMPONENT_PID_BASE + 6}"
        assert graph.parent(f"proc:{COMPONENT_PID_BASE + 6}", 1) == f"proc:{LAUNCHER_PID_BASE + 1}"

    def test_seed_determinism(self, simulator):
        spec = ScenarioSpec(topology=TopologyKind.RANDOM_DAG, size=15, seed=11, distributor_density=0.5)
        first = simulator.generate_topology(spec)
        second = simulator.generate_topology(spec)
        assert first.edges_in_order() == second.edges_in_order()


class TestRun:
    def test_chain_onsets_follow_sampled_lags(self, simulator):
        spec = ScenarioSpec(size=3, seed=5)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [FaultSpec(root="node_00", start_s=1.0)])

        truth = result.truth
        assert truth.root_causes == ["node_00"]
        assert truth.onsets["node_00"] == 1.0
        # publish edges carry the fault instantly
        assert truth.onsets["topic_00"] == 1.0
        assert truth.onsets["node_01"] > truth.onsets["topic_00"]
        assert truth.onsets["node_02"] > truth.onsets["node_01"]
        lag = truth.onsets["node_01"] - truth.onsets["topic_00"]
        assert 0.3 < lag < 0.7
        assert [step.dst for step in truth.propagation][-1] == "node_02"

    def test_perturbation_is_visible_from_onset_tick(self, simulator):
        spec = ScenarioSpec(size=2, seed=1, duration_s=5.0)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [FaultSpec(root="node_00", start_s=1.0)])
        cpu = {e.timestamp: e.metrics["cpu_fraction"] for e in result.events if e.member == "node_00"}
        assert all(value < 0.5 for t, value in cpu.items() if t < 1.0)
        assert all(value > 0.5 for t, value in cpu.items() if t >= 1.0)
        queue = {e.timestamp: e.metrics["queue_depth"] for e in result.events if e.member == "topic_00"}
        assert all(value > 10.0 for t, value in queue.items() if t >= 1.0)

    @pytest.mark.parametrize("distributor_symptoms", [True, False])
    def test_affected_members_show_perturbation_from_onset_tick(self, simulator, distributor_symptoms):
        spec = ScenarioSpec(size=3, seed=5, distributor_symptoms=distributor_symptoms)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [FaultSpec(root="node_00", start_s=1.0)])
        truth = result.truth

        for member, onset_tick in truth.onset_ticks.items():
            field, threshold = ("queue_depth", 10.0) if member.startswith("topic_") else ("cpu_fraction", 0.5)
            values = [e.metrics[field] for e in result.events if e.member == member and e.timestamp >= onset_tick]
            assert values and all(value > threshold for value in values)

        traversed = {step.dst for step in truth.propagation}
        assert {"topic_00", "topic_01"} <= traversed
        if distributor_symptoms:
            assert truth.affected == ("node_00", "node_01", "node_02", "topic_00", "topic_01")
        else:
            assert truth.affected == ("node_00", "node_01", "node_02")
            queue = [e.metrics["queue_depth"] for e in result.events if e.member.startswith("topic_")]
            assert max(queue) < 5.0

    def test_probability_zero_affects_only_root(self, simulator):
        spec = ScenarioSpec(size=5, seed=2)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [FaultSpec(root="node_02", probability=0.0)])
        assert result.truth.affected == ("node_02",)
        assert result.truth.propagation == []

    def test_event_log_shape(self, simulator):
        spec = ScenarioSpec(size=3, duration_s=2.0, tick_s=0.5)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [])
        timestamps = sorted({e.timestamp for e in result.events})
        assert timestamps == [0.0, 0.5, 1.0, 1.5]
        assert len(result.events) == 4 * 5
        assert result.truth.affected == ()
        assert all(0.0 <= e.metrics["cpu_fraction"] <= 1.0 for e in result.events if "cpu_fraction" in e.metrics)
        assert all(not e.member.startswith("proc:") for e in result.events)

    def test_process_snapshot(self, simulator):
        spec = ScenarioSpec(size=3, duration_s=1.0)
        graph = simulator.generate_topology(spec)
        result = simulator.run(graph, spec, [])
        pids = [r.pid for r in result.processes]
        assert pids == [LAUNCHER_PID_BASE, COMPONENT_PID_BASE, COMPONENT_PID_BASE + 1, COMPONENT_PID_BASE + 2]
        component = result.processes[1]
        assert component.ppid == LAUNCHER_PID_BASE
        assert component.name == "node_00"
        last = [e for e in result.events if e.member == "node_00"][-1]
        assert component.metrics == pytest.approx(last.metrics)
        assert result.processes[0].ppid == 0

    def test_determinism(self, simulator):
        spec = ScenarioSpec(topology=TopologyKind.RANDOM_DAG, size=10, seed=9)
        faults = [FaultSpec(root="node_00")]
        first = simulator.run(simulator.generate_topology(spec), spec, faults)
        second = simulator.run(simulator.generate_topology(spec), spec, faults)
        assert first.events == second.events
        assert first.truth == second.truth

    def test_unknown_fault_root(self, simulator):
        spec = ScenarioSpec()
        with pytest.raises(UnknownFaultRootError):
            simulator.run(simulator.generate_topology(spec), spec, [FaultSpec(root="node_99")])

    @pytest.mark.parametrize(
        "fault",
        [
            FaultSpec(root="node_00", start_s=25.0),
            FaultSpec(root="node_00", effect={"field": "queue_depth", "delta": 1.0}),
        ],
    )
    def test_invalid_fault(self, simulator, fault):
        spec = ScenarioSpec()
        with pytest.raises(InvalidSpecError):
            simulator.run(simulator.generate_topology(spec), spec, [fault])

    def test_noise_statistics(self, simulator):
        spec = ScenarioSpec(size=1, duration_s=100.0, seed=4)
        result = simulator.run(simulator.generate_topology(spec), spec, [])
        rss = np.array([e.metrics["rss_bytes"] for e in result.events])
        assert rss.mean() == pytest.approx(5e7, rel=5e-3)
        assert rss.std() == pytest.approx(1e6, rel=0.1)
