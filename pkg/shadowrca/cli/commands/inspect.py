# shadowrca/cli/commands/inspect.py
"""
`shadowrca inspect`: summarize a topology, state dump or report
"""
import argparse
from pathlib import Path
from typing import Any, Dict, List

from shadowrca.application.services.aggregation_service import AggregationService
from shadowrca.cli.dependencies import get_repository
from shadowrca.config import Settings
from shadowrca.core.error_handling.errors import EmptyTreeError, MultipleRootsError, ParseError
from shadowrca.domain.constants.layers import PROCESS_LAYER, is_process_member
from shadowrca.domain.entities.iteration_state import SubgraphSnapshot
from shadowrca.domain.entities.member import MemberKind
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.domain.mappers.report_mapper import ReportDataMapper
from shadowrca.infrastructure.storage.artifact_repository import ArtifactRepository


def register(subparsers) -> None:
    parser = subparsers.add_parser("inspect", help="Summarize a topology, state dump or report")
    parser.add_argument("path", type=Path, help="File to inspect")
    parser.set_defaults(handler=execute)


def execute(args: argparse.Namespace, settings: Settings) -> int:
    repository = get_repository(settings)
    print(describe(args.path, repository, settings), end="")
    return 0


def describe(path: Path, repository: ArtifactRepository, settings: Settings) -> str:
    """Render the summary of whichever document `path` holds"""
    data = repository.load_document(path)
    if not isinstance(data, dict):
        raise ParseError("expected a JSON object", path=str(path))
    if "schema" in data and "members" in data:
        return describe_topology(repository.load_topology(path), settings)
    if "schema_version" in data and "status" in data:
        try:
            return ReportDataMapper(data["schema_version"]).to_text(data)
        except (KeyError, TypeError) as e:
            raise ParseError(f"invalid report: missing {e}", path=str(path)) from e
    if "j" in data and "watchlist" in data:
        return describe_state(repository.load_state(path))
    raise ParseError("unrecognized document: expected a topology, state dump or report", path=str(path))


def describe_state(snapshot: SubgraphSnapshot) -> str:
    lines = [f"j={snapshot.j}, members={len(snapshot.members)}, edges={len(snapshot.edges)}"]
    if snapshot.extracted_at is not None:
        lines.append(f"extracted_at={snapshot.extracted_at}")
    lines.append(f"watchlist: {', '.join(sorted(snapshot.watchlist)) or '-'}")
    lines.append(f"history: {len(snapshot.history)} expansion(s)")
    for event in snapshot.history:
        at = "" if event.timestamp is None else f" at {event.timestamp}"
        lines.append(f"  j={event.j} {event.member}{at}")
    return "\n".join(lines) + "\n"


def describe_topology(graph: SystemGraph, settings: Settings) -> str:
    """Communication members and edges first; process members and their edges are counted apart"""
    processes = [m for m in graph.members() if is_process_member(m)]
    active = [m for m in graph.members(MemberKind.ACTIVE) if not is_process_member(m)]
    passive = [m for m in graph.members(MemberKind.PASSIVE) if not is_process_member(m)]
    edges = [e for e in graph.edges() if not (is_process_member(e.src) or is_process_member(e.dst))]
    lines = [
        f"members={len(active) + len(passive)} ({len(active)} active, {len(passive)} passive)",
        f"edges={len(edges)}",
    ]
    if processes:
        lines.append(f"processes={len(processes)}, process edges={len(graph.edges()) - len(edges)}")
    for layer in range(graph.layer_count):
        lines.append(
            f"layer {layer}: members={len(graph.layer_members(layer))}, edges={len(graph.edges(layer))}"
        )
    if graph.layer_count > PROCESS_LAYER and graph.edges(PROCESS_LAYER):
        lines.extend(_process_totals(graph, settings))
    return "\n".join(lines) + "\n"


def _process_totals(graph: SystemGraph, settings: Settings) -> List[str]:
    fields = graph.schema.active
    try:
        tree = graph.tree_subgraph(PROCESS_LAYER)
        totals = AggregationService(settings=settings).accumulate(graph, PROCESS_LAYER, fields)
    except (EmptyTreeError, MultipleRootsError) as e:
        return [f"process tree: {e.message}"]

    lines = [f"process tree (layer {PROCESS_LAYER}) root {tree.root}: {_vector(totals[tree.root])}"]
    for child in tree.children(tree.root):
        lines.append(f"  {child}: {_vector(totals[child])}")
    return lines


def _vector(values: Dict[str, Any]) -> str:
    return ", ".join(f"{name}={value:.6g}" for name, value in values.items()) or "-"
