# tests/unit/application/services/test_analysis_service.py
"""
Tests for AnalysisService
"""
import pytest

from shadowrca.application.services.analysis_service import AnalysisService
from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.application.services.simulation_service import SimulationService
from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.domain.entities.report import STATUS_NO_SYMPTOMS, STATUS_OK
from shadowrca.domain.entities.scenario import EventRecord
from shadowrca.infrastructure.plugins.factory import build_plugin
from shadowrca.infrastructure.plugins.threshold import ThresholdPlugin
from shadowrca.schemas.config_schemas import parse_run_config
from tests.factories import chain_graph


def chain_events(hot, ticks=40, tick=0.1):
    """Events for the chain fixture; `hot` maps member -> (first, last) hot tick index"""
    events = []
    for k in range(ticks):
        timestamp = round(k * tick, 9)
        for member in ("a", "b", "c"):
            first, last = hot.get(member, (None, None))
            load = 9.0 if first is not None and first <= k <= last else 1.0
            events.append(EventRecord(timestamp, member, {"load": load, "memory": 0.0}))
        for topic in ("t_ab", "t_bc"):
            events.append(EventRecord(timestamp, topic, {"depth": 0.0}))
    return events


def chain_config(**overrides):
    data = {"initialization": {"seed_members": ["a", "b", "c"]}}
    data.update(overrides)
    return parse_run_config(data)


@pytest.fixture
def service():
    return AnalysisService()


class TestHandBuiltChain:
    def test_latest_initial_without_upstream_edges(self, service, load_registry):
        events = chain_events({"a": (10, 39), "b": (15, 39), "c": (20, 39)})
        config = chain_config(extraction={"initial_strategy": "latest"}, correlation={"methods": ["cooccurrence"]})
        result = service.analyze(chain_graph(), events, config, load_registry)

        assert result.status == STATUS_OK
        assert result.trigger == "end_of_log"
        assert result.initial == "c"
        assert result.ticks == 40
        # topics never alert on load, so the subgraph has no edges between components
        assert result.trajectories[0].members == ("c",)

    def test_no_symptoms(self, service, load_registry):
        result = service.analyze(chain_graph(), chain_events({}), chain_config(), load_registry)
        assert result.status == STATUS_NO_SYMPTOMS
        assert not result.has_symptoms
        assert result.trajectories == ()
        assert result.alert_count == 0

    def test_quiescence_trigger(self, service, load_registry):
        events = chain_events({"a": (5, 7)})
        config = chain_config(
            extraction={"trigger": "quiescence", "quiescence_s": 1.0}, detection={"refractory_ticks": 0}
        )
        result = service.analyze(chain_graph(), events, config, load_registry)
        assert result.trigger == "quiescence"
        # last alert at 0.7, frozen once 1.0 s passed without alerts
        assert result.snapshot.extracted_at == pytest.approx(1.7)
        assert result.ticks == 18

    def test_demand_trigger(self, service, load_registry):
        events = chain_events({"a": (5, 39)})
        config = chain_config(extraction={"trigger": "demand", "at_s": 1.0}, detection={"refractory_ticks": 0})
        result = service.analyze(chain_graph(), events, config, load_registry)
        assert result.trigger == "demand"
        assert result.snapshot.extracted_at == pytest.approx(1.0)
        assert result.ticks == 11
        assert result.alert_count == 6

    def test_unordered_events(self, service, load_registry):
        events = chain_events({}, ticks=3)
        events.reverse()
        with pytest.raises(ValidationError) as excinfo:
            service.analyze(chain_graph(), events, chain_config(), load_registry)
        assert excinfo.value.error_code == "UNORDERED_EVENTS"

    def test_plugin_failures_reported(self, service):
        class Broken:
            name = "broken"

            def evaluate(self, member_id, attrs, history):
                raise ValueError("bad input")

        registry = PluginRegistry().register(Broken()).register(ThresholdPlugin("load-high", "load", 5.0))
        result = service.analyze(chain_graph(), chain_events({"a": (2, 39)}), chain_config(), registry)
        assert result.status == STATUS_OK
        assert result.failures
        assert {f.plugin for f in result.failures} == {"broken"}


class TestSimulatedScenario:
    def _simulate(self, spec_data, faults):
        config = parse_run_config({"scenario": spec_data, "faults": faults})
        simulator = SimulationService()
        graph = simulator.generate_topology(config.scenario)
        return graph, simulator.run(graph, config.scenario, config.faults)

    def _run_config(self, scenario_config_data, **overrides):
        data = {k: v for k, v in scenario_config_data.items() if k in ("plugins", "initialization")}
        data.update(overrides)
        return parse_run_config(data)

    def _registry(self, config):
        registry = PluginRegistry()
        for plugin in config.plugins:
            registry.register(build_plugin(plugin))
        return registry

    def test_chain_latest_initial_traces_to_root(self, service, scenario_config_data):
        graph, simulated = self._simulate(scenario_config_data["scenario"], scenario_config_data["faults"])
        config = self._run_config(scenario_config_data, extraction={"initial_strategy": "latest"})
        result = service.analyze(graph, simulated.events, config, self._registry(config))

        assert result.initial == "node_02"
        top = result.trajectories[0]
        assert top.members[0] == "node_02"
        assert "node_01" in top.members
        assert result.root_cause_candidates[0] == "node_00"

    def test_earliest_initial_is_root(self, service, scenario_config_data):
        graph, simulated = self._simulate(scenario_config_data["scenario"], scenario_config_data["faults"])
        config = self._run_config(scenario_config_data)
        result = service.analyze(graph, simulated.events, config, self._registry(config))
        assert result.initial == "node_00"
        assert result.root_cause_candidates == ("node_00",)

    def test_process_anomaly_initialization(self, service, scenario_config_data):
        graph, simulated = self._simulate(scenario_config_data["scenario"], scenario_config_data["faults"])
        config = self._run_config(
            scenario_config_data,
            initialization={
                "mode": "process_anomaly",
                "anomaly_rule": {
                    "name": "hot-process",
                    "type": "threshold",
                    "parameters": {"field": "cpu_fraction", "threshold": 0.5},
                },
            },
        )
        anomaly_rule = build_plugin(config.initialization.anomaly_rule)
        result = service.analyze(
            graph,
            simulated.events,
            config,
            self._registry(config),
            anomaly_rule=anomaly_rule,
            processes=simulated.processes,
        )
        assert result.status == STATUS_OK
        assert "node_00" in result.snapshot.members

    def test_deterministic(self, service, scenario_config_data):
        config = self._run_config(scenario_config_data, extraction={"initial_strategy": "latest"})
        results = []
        for _ in range(2):
            graph, simulated = self._simulate(scenario_config_data["scenario"], scenario_config_data["faults"])
            results.append(service.analyze(graph, simulated.events, config, self._registry(config)))
        first, second = results
        assert first.trajectories == second.trajectories
        assert first.snapshot == second.snapshot
        assert first.lag_model == second.lag_model
