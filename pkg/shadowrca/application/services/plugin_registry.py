# shadowrca/application/services/plugin_registry.py
"""
Ordered registry of symptom plugins
"""
from typing import Dict, Iterator, Tuple

from shadowrca.application.interfaces.symptom_plugin import SymptomPlugin
from shadowrca.core.error_handling.errors import DuplicatePluginNameError
from shadowrca.monitoring.logging_config import get_logger

logger = get_logger(__name__)


class PluginRegistry:
    """Plugins run in registration order"""

    def __init__(self):
        self._plugins: Dict[str, SymptomPlugin] = {}

    def register(self, plugin: SymptomPlugin) -> "PluginRegistry":
        if plugin.name in self._plugins:
            raise DuplicatePluginNameError(plugin.name)
        self._plugins[plugin.name] = plugin
        logger.debug("plugin_registered", plugin=plugin.name, type=type(plugin).__name__)
        return self

    @property
    def plugins(self) -> Tuple[SymptomPlugin, ...]:
        return tuple(self._plugins.values())

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._plugins)

    def __iter__(self) -> Iterator[SymptomPlugin]:
        return iter(self.plugins)

    def __len__(self) -> int:
        return len(self._plugins)
