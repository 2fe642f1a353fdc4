# shadowrca/schemas/config_schemas.py
"""
Run configuration schemas loaded from the --config JSON file
"""
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator
from pydantic import ValidationError as PydanticValidationError

from shadowrca.application.interfaces.storage_provider import StorageProvider
from shadowrca.config import get_settings
from shadowrca.core.error_handling.errors import ValidationError
from shadowrca.domain.constants.layers import PROCESS_LAYER
from shadowrca.schemas.scenario_schemas import FaultSpec, ScenarioSpec

PluginType = Literal["threshold", "zscore", "stuck-value"]
MethodName = Literal["cooccurrence", "timelag"]


def _setting(name: str):
    return lambda: getattr(get_settings(), name)


class PluginConfig(BaseModel):
    """One plugin block: name, type and type-specific parameters"""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(..., min_length=1)
    type: PluginType
    parameters: Dict[str, Any] = Field(default_factory=dict)


class ThresholdParameters(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: str = Field(..., min_length=1)
    threshold: float
    direction: Literal["above", "below"] = "above"
    label: Optional[str] = None
    severity: Optional[float] = Field(default=None, ge=0.0, le=1.0)


class ZScoreParameters(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: str = Field(..., min_length=1)
    z: float = Field(default=3.0, gt=0.0)
    min_history: int = Field(default=8, ge=2)
    label: Optional[str] = None


class StuckValueParameters(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: str = Field(..., min_length=1)
    tolerance: float = Field(default=0.0, ge=0.0)
    min_history: int = Field(default=8, ge=1)
    label: Optional[str] = None


class InitializationConfig(BaseModel):
    """Watchlist initialization: from configured seeds or from process anomalies"""

    model_config = ConfigDict(extra="forbid")

    mode: Literal["config", "process_anomaly"] = "config"
    seed_members: List[str] = Field(default_factory=list)
    seed_all_components: bool = Field(default=False, description="Seed every active non-process member")
    anomaly_rule: Optional[PluginConfig] = None
    process_layer: int = Field(default=PROCESS_LAYER, ge=1)
    bindings: Dict[str, int] = Field(default_factory=dict, description="Extra member -> pid bindings")

    @model_validator(mode="after")
    def check_single_mode(self):
        seeded = bool(self.seed_members) or self.seed_all_components
        if self.mode == "config":
            if self.anomaly_rule is not None:
                raise ValueError("anomaly_rule is only valid with mode 'process_anomaly'")
        elif seeded:
            raise ValueError("seed_members/seed_all_components are only valid with mode 'config'")
        elif self.anomaly_rule is None:
            raise ValueError("mode 'process_anomaly' requires an anomaly_rule")
        return self


class CorrelationConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    methods: List[MethodName] = Field(default_factory=lambda: ["cooccurrence", "timelag"], min_length=1)
    max_iters: int = Field(default_factory=_setting("icp_max_iters"), ge=1)
    match_window_s: float = Field(default_factory=_setting("icp_match_window_s"), gt=0.0)
    converge_eps_s: float = Field(default_factory=_setting("icp_converge_eps_s"), gt=0.0)
    max_offset_s: float = Field(default_factory=_setting("icp_max_offset_s"), gt=0.0)
    z_max: float = Field(default_factory=_setting("z_max"), gt=0.0)
    max_lag_s: float = Field(default_factory=_setting("max_lag_s"), gt=0.0)
    epsilon_s: float = Field(default_factory=_setting("lag_epsilon_s"), gt=0.0)
    episode_gap_s: Optional[float] = Field(default=None, gt=0.0)
    lag_model_path: Optional[Path] = None
    max_trajectories: int = Field(default_factory=_setting("max_trajectories"), ge=1)

    @field_validator("methods")
    @classmethod
    def dedupe_methods(cls, v):
        return list(dict.fromkeys(v))


class ExtractionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trigger: Literal["demand", "quiescence"] = "quiescence"
    quiescence_s: float = Field(default_factory=_setting("quiescence_s"), gt=0.0)
    at_s: Optional[float] = Field(default=None, description="Demand extraction time; end of log when unset")
    initial_strategy: Literal["earliest", "latest"] = "earliest"
    initial_member: Optional[str] = Field(default=None, description="Explicit initial member, overrides strategy")


class DetectionConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    history_size: int = Field(default_factory=_setting("history_size"), ge=1)
    refractory_ticks: int = Field(default_factory=_setting("refractory_ticks"), ge=0)


class RunConfig(BaseModel):
    """Everything one simulate or analyze run needs"""

    model_config = ConfigDict(extra="forbid")

    scenario: Optional[ScenarioSpec] = None
    faults: List[FaultSpec] = Field(default_factory=list)
    topology_path: Optional[Path] = None
    events_path: Optional[Path] = None
    processes_path: Optional[Path] = None
    plugins: List[PluginConfig] = Field(default_factory=list)
    initialization: InitializationConfig = Field(default_factory=InitializationConfig)
    correlation: CorrelationConfig = Field(default_factory=CorrelationConfig)
    extraction: ExtractionConfig = Field(default_factory=ExtractionConfig)
    detection: DetectionConfig = Field(default_factory=DetectionConfig)
    output_dir: Path = Field(default=Path("out"), validate_default=True)

    @field_validator("topology_path", "events_path", "processes_path")
    @classmethod
    def resolve_input(cls, v: Optional[Path], info: ValidationInfo):
        if v is None:
            return v
        path = _resolve(v, info)
        if not path.exists():
            raise ValueError(f"file not found: {path}")
        return path

    @field_validator("output_dir")
    @classmethod
    def resolve_output(cls, v: Path, info: ValidationInfo):
        return _resolve(v, info)

    @model_validator(mode="after")
    def resolve_lag_model(self, info: ValidationInfo):
        path = self.correlation.lag_model_path
        if path is not None:
            path = _resolve(path, info)
            if not path.exists():
                raise ValueError(f"lag model file not found: {path}")
            self.correlation.lag_model_path = path
        return self


def _resolve(path: Path, info: ValidationInfo) -> Path:
    base_dir = (info.context or {}).get("base_dir")
    if base_dir is not None and not path.is_absolute():
        return Path(base_dir) / path
    return path


def load_run_config(path: Path, storage: StorageProvider) -> RunConfig:
    """
    Load and validate a run configuration file

    Relative paths inside the file are resolved against the file's directory.

    Raises:
        ParseError: the file is not valid JSON
        ValidationError: the document does not describe a valid run
    """
    data = storage.read_json(path)
    return parse_run_config(data, base_dir=Path(path).parent, source=str(path))


def parse_run_config(data: Any, base_dir: Optional[Path] = None, source: str = "<config>") -> RunConfig:
    """Validate a configuration document"""
    try:
        return RunConfig.model_validate(data, context={"base_dir": base_dir})
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise ValidationError(
            f"{source}: invalid configuration at {location}: {first['msg']}",
            error_code="INVALID_CONFIG",
            details={"errors": [{"loc": list(err["loc"]), "msg": err["msg"]} for err in e.errors()]},
        ) from e
