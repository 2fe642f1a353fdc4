# tests/conftest.py
"""
Pytest configuration and fixtures
"""
import pytest
import structlog

from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.config import Settings
from shadowrca.infrastructure.plugins.threshold import ThresholdPlugin
from shadowrca.infrastructure.storage.artifact_repository import ArtifactRepository
from shadowrca.infrastructure.storage.file_storage import FileStorage
from shadowrca.monitoring.logging_config import setup_logging
from shadowrca.schemas.config_schemas import parse_run_config
from tests.factories import chain_graph

# Keep test output readable
setup_logging("WARNING", "json")


@pytest.fixture(autouse=True)
def reset_logging():
    """Give every test the quiet default configuration, whatever the previous one left behind"""
    structlog.reset_defaults()
    setup_logging("WARNING", "json")
    yield
    structlog.reset_defaults()
    setup_logging("WARNING", "json")


class RecordingPlugin:
    """Plugin double that records every call and returns a fixed answer"""

    def __init__(self, name="recording", result=None):
        self.name = name
        self.result = result
        self.calls = []

    def evaluate(self, member_id, attrs, history):
        self.calls.append((member_id, dict(attrs), len(history)))
        return self.result


@pytest.fixture
def settings():
    """Default settings, independent of the environment"""
    return Settings()


@pytest.fixture
def graph():
    """Return the a -> t_ab -> b -> t_bc -> c chain"""
    return chain_graph()


@pytest.fixture
def repository():
    """Return a repository over real file storage"""
    return ArtifactRepository(FileStorage())


@pytest.fixture
def load_registry():
    """Registry with a single 'load above 5' threshold plugin"""
    return PluginRegistry().register(ThresholdPlugin("load-high", "load", 5.0))


@pytest.fixture
def scenario_config_data():
    """Run configuration document for a seeded chain scenario"""
    return {
        "scenario": {"seed": 7, "topology": "chain", "size": 3, "duration_s": 12.0, "tick_s": 0.1},
        "faults": [{"root": "node_00", "start_s": 1.0}],
        "plugins": [
            {"name": "cpu-high", "type": "threshold", "parameters": {"field": "cpu_fraction", "threshold": 0.5}},
            {"name": "queue-high", "type": "threshold", "parameters": {"field": "queue_depth", "threshold": 5.0}},
        ],
        "initialization": {"mode": "config", "seed_all_components": True},
    }


@pytest.fixture
def scenario_config(scenario_config_data, tmp_path):
    return parse_run_config(scenario_config_data, base_dir=tmp_path)
