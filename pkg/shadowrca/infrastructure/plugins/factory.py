# shadowrca/infrastructure/plugins/factory.py
"""
Build reference plugins from configuration blocks
"""
from typing import Callable, Dict, Type

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from shadowrca.application.interfaces.symptom_plugin import SymptomPlugin
from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.infrastructure.plugins.stuck_value import StuckValuePlugin
from shadowrca.infrastructure.plugins.threshold import ThresholdPlugin
from shadowrca.infrastructure.plugins.zscore import ZScorePlugin
from shadowrca.schemas.config_schemas import (
    PluginConfig,
    StuckValueParameters,
    ThresholdParameters,
    ZScoreParameters,
)

_PLUGIN_TYPES: Dict[str, tuple[Type[BaseModel], Callable[..., SymptomPlugin]]] = {
    "threshold": (ThresholdParameters, ThresholdPlugin),
    "zscore": (ZScoreParameters, ZScorePlugin),
    "stuck-value": (StuckValueParameters, StuckValuePlugin),
}


def build_plugin(config: PluginConfig) -> SymptomPlugin:
    """Instantiate the plugin a configuration block describes"""
    try:
        parameters_model, plugin_class = _PLUGIN_TYPES[config.type]
    except KeyError:
        raise ValidationError(f"Unknown plugin type '{config.type}'", error_code="UNKNOWN_PLUGIN_TYPE") from None

    try:
        parameters = parameters_model.model_validate(config.parameters)
    except PydanticValidationError as e:
        first = e.errors()[0]
        raise ValidationError(
            f"Invalid parameters for plugin '{config.name}': {'.'.join(map(str, first['loc']))}: {first['msg']}",
            error_code="INVALID_PLUGIN_PARAMETERS",
            details={"plugin": config.name},
        ) from e
    return plugin_class(name=config.name, **parameters.model_dump())
