# tests/unit/application/services/test_detection_service.py
"""
Tests for DetectionService and PluginRegistry
"""
import pytest

from shadowrca.application.services.analysis_service import AnalysisService
from shadowrca.application.services.detection_service import DetectionService
from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.core.error_handling.errors import DuplicatePluginNameError, UnknownMemberError
from shadowrca.domain.entities.alert import Alert, Symptom
from shadowrca.infrastructure.plugins.threshold import ThresholdPlugin
from tests.conftest import RecordingPlugin


class ExplodingPlugin:
    name = "exploding"

    def evaluate(self, member_id, attrs, history):
        raise RuntimeError("boom")


class MutatingPlugin:
    name = "mutating"

    def evaluate(self, member_id, attrs, history):
        attrs["load"] = 1000.0


class TestPluginRegistry:
    def test_registration_order(self):
        registry = PluginRegistry().register(RecordingPlugin("b")).register(RecordingPlugin("a"))
        assert registry.names == ("b", "a")
        assert len(registry) == 2

    def test_duplicate_name(self):
        registry = PluginRegistry().register(RecordingPlugin("x"))
        with pytest.raises(DuplicatePluginNameError):
            registry.register(RecordingPlugin("x"))


class TestEvaluateTick:
    """Watchlist evaluation, history and isolation"""

    def test_only_watched_members_are_evaluated(self, graph):
        plugin = RecordingPlugin()
        service = DetectionService(PluginRegistry().register(plugin))
        service.evaluate_tick(graph, {"b", "a"}, 0.0)
        assert [call[0] for call in plugin.calls] == ["a", "b"]

    def test_empty_watchlist(self, graph, load_registry):
        service = DetectionService(load_registry)
        assert service.evaluate_tick(graph, set(), 0.0) == []
        assert len(service.store) == 0

    def test_threshold_alert_recorded(self, graph, load_registry):
        graph.update_attributes("b", {"load": 9.0, "memory": 0.0})
        service = DetectionService(load_registry)
        alerts = service.evaluate_tick(graph, {"a", "b"}, 1.0)
        assert alerts == [Alert(1.0, "b", "load-high", 0.8)]
        assert service.store.series("b") == [1.0]

    def test_alerts_sorted_by_origin(self, graph):
        registry = PluginRegistry().register(RecordingPlugin("always", Symptom("x")))
        alerts = DetectionService(registry).evaluate_tick(graph, {"c", "a", "b"}, 2.0)
        assert [a.origin for a in alerts] == ["a", "b", "c"]

    def test_unknown_watched_member(self, graph, load_registry):
        with pytest.raises(UnknownMemberError):
            DetectionService(load_registry).evaluate_tick(graph, {"ghost"}, 0.0)

    def test_history_window(self, graph):
        plugin = RecordingPlugin()
        service = DetectionService(PluginRegistry().register(plugin), history_size=3)
        for tick in range(5):
            graph.update_attributes("a", {"load": float(tick), "memory": 0.0})
            service.evaluate_tick(graph, {"a"}, float(tick))
        assert [h["load"] for h in service.history("a")] == [2.0, 3.0, 4.0]
        # history excludes the current vector
        assert [call[2] for call in plugin.calls] == [0, 1, 2, 3, 3]
        assert len(service.history("c")) == 3

    def test_plugin_failure_is_isolated(self, graph, load_registry):
        registry = PluginRegistry().register(ExplodingPlugin())
        registry.register(ThresholdPlugin("load-high", "load", 5.0))
        graph.update_attributes("a", {"load": 6.0, "memory": 0.0})
        service = DetectionService(registry)
        alerts = service.evaluate_tick(graph, {"a"}, 1.0)
        assert [a.label for a in alerts] == ["load-high"]
        assert len(service.failures) == 1
        assert service.failures[0].plugin == "exploding"
        assert service.failures[0].error == "boom"

    def test_plugin_cannot_mutate_attributes(self, graph):
        service = DetectionService(PluginRegistry().register(MutatingPlugin()))
        service.evaluate_tick(graph, {"a"}, 0.0)
        assert graph.attributes("a")["load"] == 0.0
        assert service.failures[0].plugin == "mutating"

    def test_non_symptom_return_is_a_failure(self, graph):
        service = DetectionService(PluginRegistry().register(RecordingPlugin("bad", "not a symptom")))
        assert service.evaluate_tick(graph, {"a"}, 0.0) == []
        assert service.failures[0].plugin == "bad"


class TestRefractoryPeriod:
    """Repeated (origin, label) pairs inside the refractory period collapse"""

    def test_same_tick_duplicates_collapse(self, graph):
        registry = PluginRegistry()
        registry.register(RecordingPlugin("one", Symptom("high")))
        registry.register(RecordingPlugin("two", Symptom("high")))
        service = DetectionService(registry, refractory_s=0.0)
        assert len(service.evaluate_tick(graph, {"a"}, 1.0)) == 1

    def test_suppressed_within_period(self, graph):
        registry = PluginRegistry().register(RecordingPlugin("always", Symptom("high")))
        service = DetectionService(registry, refractory_s=0.3)
        emitted = [len(service.evaluate_tick(graph, {"a"}, round(t * 0.1, 9))) for t in range(7)]
        assert emitted == [1, 0, 0, 1, 0, 0, 1]

    def test_consecutive_ticks_pass_with_one_tick_period(self, graph):
        registry = PluginRegistry().register(RecordingPlugin("always", Symptom("high")))
        service = DetectionService(registry, refractory_s=0.1)
        emitted = [len(service.evaluate_tick(graph, {"a"}, round(t * 0.1, 9))) for t in range(4)]
        assert emitted == [1, 1, 1, 1]

    def test_single_tick_log_period_still_collapses(self, graph):
        registry = PluginRegistry()
        registry.register(RecordingPlugin("one", Symptom("high")))
        registry.register(RecordingPlugin("two", Symptom("high")))
        service = DetectionService(registry, refractory_s=AnalysisService._tick_length([]))
        alerts = service.evaluate_tick(graph, {"a"}, 1.0)
        assert alerts == [Alert(1.0, "a", "high", 1.0)]

    def test_zero_period_passes_every_later_tick(self, graph):
        registry = PluginRegistry()
        registry.register(RecordingPlugin("one", Symptom("high")))
        registry.register(RecordingPlugin("two", Symptom("high")))
        service = DetectionService(registry, refractory_s=0.0)
        emitted = [len(service.evaluate_tick(graph, {"a"}, round(t * 0.1, 9))) for t in range(3)]
        assert emitted == [1, 1, 1]
