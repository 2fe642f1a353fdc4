# shadowrca/cli/commands/simulate.py
"""
`shadowrca simulate`: generate a seeded scenario
"""
import argparse
from pathlib import Path

from shadowrca.application.services.simulation_service import SimulationService
from shadowrca.cli.dependencies import get_repository, get_run_config
from shadowrca.config import Settings
from shadowrca.monitoring.logging_config import get_logger
from shadowrca.schemas.scenario_schemas import ScenarioSpec

logger = get_logger(__name__)

TOPOLOGY_FILE = "topology.json"
EVENTS_FILE = "events.jsonl"
TRUTH_FILE = "ground_truth.json"
PROCESSES_FILE = "processes.jsonl"


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Generate topology, event log and ground truth")
    parser.add_argument("--config", type=Path, help="Run configuration with a scenario block")
    parser.add_argument("--seed", type=int, help="Override scenario.seed")
    parser.add_argument("--out", type=Path, help="Output directory (default: output_dir of the config)")
    parser.set_defaults(handler=execute)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    """Write topology.json, events.jsonl, ground_truth.json and processes.jsonl"""
    repository = get_repository(settings)
    config = get_run_config(args.config, repository)

    spec = config.scenario or ScenarioSpec()
    if args.seed is not None:
        spec = spec.model_copy(update={"seed": args.seed})
    if not config.faults:
        logger.warning("no_faults_configured", seed=spec.seed)
    out_dir = args.out or config.output_dir

    simulator = SimulationService(settings=settings)
    graph = simulator.generate_topology(spec)
    result = simulator.run(graph, spec, config.faults)

    repository.save_topology(out_dir / TOPOLOGY_FILE, graph)
    repository.save_events(out_dir / EVENTS_FILE, result.events)
    repository.save_truth(out_dir / TRUTH_FILE, result.truth)
    repository.save_processes(out_dir / PROCESSES_FILE, result.processes)

    print(
        f"simulated {spec.topology.value} scenario (seed={spec.seed}): "
        f"{len(graph)} members, {len(result.events)} events, "
        f"root cause {result.truth.root_cause or '-'} -> {out_dir}"
    )
    return 0
