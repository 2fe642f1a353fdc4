# shadowrca/monitoring/metrics.py
"""
Prometheus metrics definitions
"""
from pathlib import Path

from prometheus_client import REGISTRY, Counter, Histogram, Info, write_to_textfile

# Application info
app_info = Info("shadowrca_app", "shadowrca build information")

# Detection metrics
alerts_emitted_total = Counter(
    "shadowrca_alerts_emitted_total",
    "Total number of alerts emitted by symptom plugins",
    labelnames=["label"],
)

alerts_suppressed_total = Counter(
    "shadowrca_alerts_suppressed_total",
    "Alerts collapsed by the refractory period",
    labelnames=["label"],
)

plugin_failures_total = Counter(
    "shadowrca_plugin_failures_total",
    "Total number of isolated plugin failures",
    labelnames=["plugin"],
)

# Subgraph metrics
subgraph_expansions_total = Counter(
    "shadowrca_subgraph_expansions_total",
    "Total number of subgraph expansion steps",
)

# Trajectory metrics
trajectories_extracted_total = Counter(
    "shadowrca_trajectories_extracted_total",
    "Total number of fault trajectories extracted",
)

correlations_total = Counter(
    "shadowrca_correlations_total",
    "Correlation verdicts computed",
    labelnames=["method", "dependent"],
)

# Simulation metrics
simulated_ticks_total = Counter(
    "shadowrca_simulated_ticks_total",
    "Total number of simulated ticks",
)

# Pipeline timing
stage_duration = Histogram(
    "shadowrca_stage_duration_seconds",
    "Pipeline stage duration in seconds",
    labelnames=["stage"],
    buckets=[0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0],
)


def setup_metrics() -> None:
    """Initialize metrics with application info"""
    from shadowrca import __version__
    from shadowrca.config import get_settings

    settings = get_settings()
    app_info.info({"version": __version__, "report_schema": settings.report_schema_version})


def record_stage(stage: str, duration: float) -> None:
    """Record the duration of a pipeline stage"""
    stage_duration.labels(stage=stage).observe(duration)


def write_metrics(path: Path) -> None:
    """Write the default registry in text exposition format"""
    path.parent.mkdir(parents=True, exist_ok=True)
    write_to_textfile(str(path), REGISTRY)
