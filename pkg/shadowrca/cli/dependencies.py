# shadowrca/cli/dependencies.py
"""
Shared wiring for CLI commands
"""
from pathlib import Path
from typing import Optional, Sequence

from shadowrca.application.interfaces.symptom_plugin import SymptomPlugin
from shadowrca.application.services.plugin_registry import PluginRegistry
from shadowrca.config import Settings
from shadowrca.infrastructure.plugins.factory import build_plugin
from shadowrca.infrastructure.storage.artifact_repository import ArtifactRepository
from shadowrca.infrastructure.storage.file_storage import FileStorage
from shadowrca.schemas.config_schemas import PluginConfig, RunConfig, load_run_config, parse_run_config


def get_repository(settings: Settings) -> ArtifactRepository:
    """Artifact repository writing canonical JSON at the configured precision"""
    return ArtifactRepository(FileStorage(digits=settings.float_digits))


def get_run_config(path: Optional[Path], repository: ArtifactRepository) -> RunConfig:
    """Load --config, or the all-defaults configuration when it is omitted"""
    if path is None:
        return parse_run_config({}, base_dir=Path.cwd(), source="<defaults>")
    return load_run_config(path, repository.storage)


def get_plugin_registry(configs: Sequence[PluginConfig]) -> PluginRegistry:
    """Build and register the configured plugins in file order"""
    registry = PluginRegistry()
    for config in configs:
        registry.register(build_plugin(config))
    return registry


def get_anomaly_rule(config: RunConfig) -> Optional[SymptomPlugin]:
    rule = config.initialization.anomaly_rule
    return build_plugin(rule) if rule is not None else None
