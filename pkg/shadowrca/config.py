# shadowrca/config.py
"""
Configuration management for shadowrca
"""
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide defaults.

    Only the logging knobs are meant to be set from the environment
    (SHADOWRCA_LOG_LEVEL, SHADOWRCA_LOG_FORMAT); analysis results never
    depend on the environment.
    """

    model_config = SettingsConfigDict(
        env_prefix="SHADOWRCA_",
        case_sensitive=False,
        extra="ignore",
        frozen=True,
    )

    # Monitoring
    log_level: str = Field(default="WARNING")
    log_format: str | None = Field(default=None)  # console, json
    enable_metrics: bool = Field(default=True)

    # Detection
    history_size: int = Field(default=32, ge=1)
    refractory_ticks: int = Field(default=1, ge=0)

    # Subgraph extraction
    quiescence_s: float = Field(default=5.0, gt=0)

    # Correlation
    icp_max_iters: int = Field(default=50, ge=1)
    icp_match_window_s: float = Field(default=1.0, gt=0)
    icp_converge_eps_s: float = Field(default=1e-3, gt=0)
    icp_max_offset_s: float = Field(default=10.0, gt=0)
    max_lag_s: float = Field(default=10.0, gt=0)
    lag_epsilon_s: float = Field(default=0.01, gt=0)
    z_max: float = Field(default=3.0, gt=0)
    max_trajectories: int = Field(default=256, ge=1)

    # Output
    float_digits: int = Field(default=9, ge=1, le=17)
    report_schema_version: str = Field(default="1.0")

    @field_validator("log_format")
    def validate_log_format(cls, v):
        """Accept console or json only"""
        if v is not None and v not in ("console", "json"):
            raise ValueError("log_format must be 'console' or 'json'")
        return v


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
