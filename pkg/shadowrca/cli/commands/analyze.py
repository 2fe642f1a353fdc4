# shadowrca/cli/commands/analyze.py
"""
`shadowrca analyze`: replay an event log and report fault trajectories
"""
import argparse
from pathlib import Path

from shadowrca.application.services.analysis_service import AnalysisService
from shadowrca.cli.dependencies import get_anomaly_rule, get_plugin_registry, get_repository, get_run_config
from shadowrca.config import Settings
from shadowrca.core.error_handling.errors import NoSymptomsError, ValidationError
from shadowrca.domain.mappers.report_mapper import ReportDataMapper
from shadowrca.monitoring.metrics import write_metrics
from shadowrca.schemas.config_schemas import RunConfig

REPORT_FILE = "report.json"
REPORT_TEXT_FILE = "report.txt"
STATE_FILE = "state.json"
ALERTS_FILE = "alerts.jsonl"

BOTH_METHODS = ["cooccurrence", "timelag"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="Replay an event log and rank fault trajectories")
    parser.add_argument("--config", type=Path, help="Run configuration (plugins, initialization, correlation)")
    parser.add_argument("--topology", type=Path, help="Topology file (overrides topology_path)")
    parser.add_argument("--events", type=Path, help="Event log (overrides events_path)")
    parser.add_argument("--processes", type=Path, help="Process snapshot (overrides processes_path)")
    parser.add_argument("--trigger", choices=["demand", "quiescence"], help="Subgraph extraction trigger")
    parser.add_argument("--methods", choices=["cooccurrence", "timelag", "both"], help="Correlation methods")
    parser.add_argument("--out", type=Path, help="Output directory (default: output_dir of the config)")
    parser.add_argument("--metrics-out", type=Path, help="Write Prometheus metrics to this file")
    parser.set_defaults(handler=execute)


def apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Fold command-line flags into the run configuration"""
    update = {}
    for flag, field in (("topology", "topology_path"), ("events", "events_path"), ("processes", "processes_path")):
        value = getattr(args, flag, None)
        if value is not None:
            update[field] = value
    if getattr(args, "out", None) is not None:
        update["output_dir"] = args.out
    if getattr(args, "trigger", None) is not None:
        update["extraction"] = config.extraction.model_copy(update={"trigger": args.trigger})
    if getattr(args, "methods", None) is not None:
        methods = BOTH_METHODS if args.methods == "both" else [args.methods]
        update["correlation"] = config.correlation.model_copy(update={"methods": methods})
    return config.model_copy(update=update) if update else config


def execute(args: argparse.Namespace, settings: Settings) -> int:
    """
    Write report.json, report.txt, state.json and alerts.jsonl

    The report is written before a run without alerts fails with exit code 4.
    """
    repository = get_repository(settings)
    config = apply_overrides(get_run_config(args.config, repository), args)
    if config.topology_path is None or config.events_path is None:
        raise ValidationError(
            "analyze needs a topology and an event log (--topology/--events or the config)",
            error_code="MISSING_INPUT",
        )

    graph = repository.load_topology(config.topology_path)
    events = repository.load_events(config.events_path)
    processes = repository.load_processes(config.processes_path) if config.processes_path else None
    lag_model_path = config.correlation.lag_model_path
    lag_model = repository.load_lag_model(lag_model_path) if lag_model_path else None

    try:
        result = AnalysisService(settings=settings).analyze(
            graph,
            events,
            config,
            get_plugin_registry(config.plugins),
            anomaly_rule=get_anomaly_rule(config),
            processes=processes,
            lag_model=lag_model,
        )
    finally:
        if args.metrics_out is not None:
            write_metrics(args.metrics_out)

    mapper = ReportDataMapper(settings.report_schema_version)
    report = mapper.to_dict(result)
    text = mapper.to_text(report)
    out_dir = config.output_dir
    repository.save_document(out_dir / REPORT_FILE, report)
    repository.save_text(out_dir / REPORT_TEXT_FILE, text)
    repository.save_state(out_dir / STATE_FILE, result.snapshot)
    repository.save_alerts(out_dir / ALERTS_FILE, result.alerts)

    print(text, end="")
    if not result.has_symptoms:
        raise NoSymptomsError()
    return 0
