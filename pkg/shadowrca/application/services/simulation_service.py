# shadowrca/application/services/simulation_service.py
"""
Synthetic topologies, fault injection and event-log generation
"""
import heapq
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from shadowrca.application.services.aggregation_service import AggregationService
from shadowrca.application.services.base_service import BaseService
from shadowrca.application.services.decorators import log_execution
from shadowrca.core.error_handling.errors import EmptyTreeError, InvalidSpecError, UnknownFaultRootError
from shadowrca.domain.constants.layers import (
    DEFAULT_LAYER_COUNT,
    PROCESS_LAYER,
    VIRTUAL_ROOT_ID,
    is_process_member,
)
from shadowrca.domain.constants.metrics import ACTIVE_FIELDS, FRACTION_FIELDS, PASSIVE_FIELDS, QUEUE_DEPTH
from shadowrca.domain.entities.member import AttributeSchema, Direction, MemberKind
from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.domain.entities.scenario import EventRecord, GroundTruth, PropagationStep
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.monitoring.metrics import simulated_ticks_total
from shadowrca.schemas.scenario_schemas import FaultSpec, ScenarioSpec, TopologyKind

LAUNCHER_PID_BASE = 1000
COMPONENT_PID_BASE = 10000


@dataclass
class SimulationResult:
    """Event log, injected truth and the final-tick process snapshot"""

    events: List[EventRecord]
    truth: GroundTruth
    processes: List[ProcessRecord]


def node_id(index: int) -> str:
    return f"node_{index:02d}"


def topic_id(index: int) -> str:
    return f"topic_{index:02d}"


class _TopologyBuilder:
    """Connects active members directly or through one distributor per publisher"""

    def __init__(self, graph: SystemGraph, spec: ScenarioSpec, rng: np.random.Generator):
        self.graph = graph
        self.spec = spec
        self.rng = rng
        self._topics: Dict[str, str] = {}

    def connect(self, publisher: str, subscriber: str) -> None:
        if self.rng.random() < self.spec.distributor_density:
            topic = self._topic_of(publisher)
            self.graph.add_edge(topic, subscriber, 0)
        else:
            self.graph.add_edge(publisher, subscriber, 0)

    def _topic_of(self, publisher: str) -> str:
        if publisher not in self._topics:
            topic = topic_id(len(self._topics))
            baseline = {name: self.spec.metrics[name].baseline for name in PASSIVE_FIELDS}
            self.graph.add_member(topic, MemberKind.PASSIVE, baseline)
            self.graph.add_edge(publisher, topic, 0)
            self._topics[publisher] = topic
        return self._topics[publisher]


class SimulationService(BaseService):
    """Deterministic scenario generator and runner"""

    @log_execution(stage="generate_topology")
    def generate_topology(self, spec: ScenarioSpec) -> SystemGraph:
        """
        Build the scenario's system graph

        Active members are "node_NN", distributors "topic_NN". Layer 1 holds
        a process tree: components grouped under launcher processes, which are
        unified by the virtual root when there is more than one launcher. Every
        component is bound to its own process.

        Raises:
            InvalidSpecError: the scenario is inconsistent
        """
        self._check_spec(spec)
        topology_seq, _, _ = np.random.SeedSequence(spec.seed).spawn(3)
        rng = np.random.default_rng(topology_seq)

        graph = SystemGraph(AttributeSchema(ACTIVE_FIELDS, PASSIVE_FIELDS), DEFAULT_LAYER_COUNT)
        active_baseline = {name: spec.metrics[name].baseline for name in ACTIVE_FIELDS}
        nodes = [node_id(i) for i in range(spec.size)]
        for node in nodes:
            graph.add_member(node, MemberKind.ACTIVE, active_baseline)

        builder = _TopologyBuilder(graph, spec, rng)
        n = spec.size
        if spec.topology is TopologyKind.TREE:
            for i in range(1, n):
                builder.connect(nodes[(i - 1) // spec.fanout], nodes[i])
        elif spec.topology is TopologyKind.DIAMOND and n >= 3:
            for middle in nodes[1:-1]:
                builder.connect(nodes[0], middle)
            for middle in nodes[1:-1]:
                builder.connect(middle, nodes[-1])
        elif spec.topology is TopologyKind.RANDOM_DAG:
            for i in range(1, n):
                parents = [j for j in range(i) if rng.random() < spec.edge_probability]
                if not parents:
                    parents = [int(rng.integers(0, i))]
                for j in parents:
                    builder.connect(nodes[j], nodes[i])
        else:
            # Chain, and diamonds too small to have a middle
            for i in range(1, n):
                builder.connect(nodes[i - 1], nodes[i])

        self._add_process_tree(graph, spec, nodes, active_baseline)
        graph.validate()
        self.logger.info(
            "topology_generated",
            topology=spec.topology.value,
            members=len(graph),
            edges=len(graph.edges()),
            seed=spec.seed,
        )
        return graph

    @log_execution(stage="simulate")
    def run(self, graph: SystemGraph, spec: ScenarioSpec, faults: Sequence[FaultSpec]) -> SimulationResult:
        """
        Sample every communication member once per tick and inject faults

        Metrics are baseline plus Gaussian noise. A fault reaches a member at
        its earliest onset over all layer-0 paths from the root: each edge is
        crossed with the fault's probability, edges into active members add
        a sampled lag and publish edges add none. From its onset tick an
        active member's effect field shifts by the fault's delta; traversed
        distributors shift queue_depth when distributor symptoms are enabled.

        Raises:
            UnknownFaultRootError: a fault root is not a graph member
            InvalidSpecError: a fault starts outside the run or perturbs an unknown field
        """
        self._check_spec(spec)
        for fault in faults:
            if not graph.has_member(fault.root):
                raise UnknownFaultRootError(fault.root)
            if not 0.0 <= fault.start_s < spec.duration_s:
                raise InvalidSpecError(f"Fault start {fault.start_s} is outside [0, {spec.duration_s})")
            if fault.effect.field not in graph.schema.active:
                raise InvalidSpecError(f"Fault effect field '{fault.effect.field}' is not an active metric")

        _, propagation_seq, noise_seq = np.random.SeedSequence(spec.seed).spawn(3)
        tick_count = max(1, int(math.floor(spec.duration_s / spec.tick_s + 1e-9)))
        timestamps = [round(k * spec.tick_s, 9) for k in range(tick_count)]

        onsets, via, causes = self._propagate(graph, faults, np.random.default_rng(propagation_seq))
        onset_ticks = {}
        for member, onset in onsets.items():
            index = math.ceil(onset / spec.tick_s - 1e-9)
            if index < tick_count:
                onset_ticks[member] = index
        visible = sorted(onset_ticks)

        members = [m for m in graph.members_in_order() if not is_process_member(m.id)]
        layout: List[Tuple[str, Tuple[str, ...], int]] = []
        baseline: List[float] = []
        noise_std: List[float] = []
        for member in members:
            fields = graph.schema.fields_for(member.kind)
            layout.append((member.id, fields, len(baseline)))
            for name in fields:
                baseline.append(spec.metrics[name].baseline)
                noise_std.append(spec.metrics[name].noise_std)
        base = np.asarray(baseline, dtype=float)
        std = np.asarray(noise_std, dtype=float)
        offsets = {member_id: (fields, start) for member_id, fields, start in layout}
        fraction_mask = np.zeros(base.size, dtype=bool)
        for member_id, fields, start in layout:
            for k, name in enumerate(fields):
                fraction_mask[start + k] = name in FRACTION_FIELDS

        # (tick index, vector index, delta) per visible perturbation
        perturbations: List[Tuple[int, int, float]] = []
        perturbed: List[str] = []
        for member_id in visible:
            fields, start = offsets.get(member_id, ((), 0))
            fault = faults[causes[member_id]]
            tick = onset_ticks[member_id]
            if graph.kind(member_id) is MemberKind.ACTIVE:
                if fault.effect.field in fields:
                    perturbations.append((tick, start + fields.index(fault.effect.field), fault.effect.delta))
                    perturbed.append(member_id)
            elif spec.distributor_symptoms and QUEUE_DEPTH in fields:
                perturbations.append((tick, start + fields.index(QUEUE_DEPTH), spec.distributor_effect))
                perturbed.append(member_id)

        noise_rng = np.random.default_rng(noise_seq)
        events: List[EventRecord] = []
        last_values = base
        for k, timestamp in enumerate(timestamps):
            values = base + noise_rng.standard_normal(base.size) * std
            for tick, index, delta in perturbations:
                if k >= tick:
                    values[index] += delta
            values = np.where(fraction_mask, np.clip(values, 0.0, 1.0), np.maximum(values, 0.0))
            row = values.tolist()
            for member_id, fields, start in layout:
                events.append(
                    EventRecord(timestamp, member_id, {name: row[start + i] for i, name in enumerate(fields)})
                )
            last_values = values
        simulated_ticks_total.inc(tick_count)

        truth = GroundTruth(
            root_causes=[fault.root for fault in faults],
            onsets={m: onsets[m] for m in perturbed},
            onset_ticks={m: timestamps[onset_ticks[m]] for m in perturbed},
            propagation=sorted(
                (PropagationStep(via[m], m, onsets[m]) for m in visible if m in via),
                key=lambda step: (step.onset_s, step.dst),
            ),
        )
        final = {
            member_id: (fields, last_values[start : start + len(fields)].tolist())
            for member_id, fields, start in layout
        }
        processes = self._process_snapshot(graph, final)
        self.logger.info("scenario_simulated", ticks=tick_count, events=len(events), affected=len(perturbed))
        return SimulationResult(events=events, truth=truth, processes=processes)

    # -- internals ---------------------------------------------------------

    @staticmethod
    def _check_spec(spec: ScenarioSpec) -> None:
        if spec.duration_s <= 0 or spec.tick_s <= 0:
            raise InvalidSpecError("duration_s and tick_s must be positive")
        if spec.tick_s > spec.duration_s:
            raise InvalidSpecError("tick_s must not exceed duration_s")
        if spec.size < 1:
            raise InvalidSpecError("size must be at least 1")
        missing = [name for name in ACTIVE_FIELDS + PASSIVE_FIELDS if name not in spec.metrics]
        if missing:
            raise InvalidSpecError(f"No metric model for {missing}")

    def _add_process_tree(
        self,
        graph: SystemGraph,
        spec: ScenarioSpec,
        nodes: Sequence[str],
        baseline: Dict[str, float],
    ) -> None:
        per_launcher = spec.components_per_launcher
        launchers = (len(nodes) + per_launcher - 1) // per_launcher
        records = [
            ProcessRecord(LAUNCHER_PID_BASE + g, 0, f"launcher_{g:02d}", dict(baseline)) for g in range(launchers)
        ]
        records += [
            ProcessRecord(COMPONENT_PID_BASE + i, LAUNCHER_PID_BASE + i // per_launcher, node, dict(baseline))
            for i, node in enumerate(nodes)
        ]
        aggregation = AggregationService(settings=self.settings)
        aggregation.build_process_tree(graph, records, PROCESS_LAYER)
        aggregation.bind_processes(graph, {node: COMPONENT_PID_BASE + i for i, node in enumerate(nodes)})

    @staticmethod
    def _propagate(
        graph: SystemGraph,
        faults: Sequence[FaultSpec],
        rng: np.random.Generator,
    ) -> Tuple[Dict[str, float], Dict[str, str], Dict[str, int]]:
        """Earliest onset per member, the member it came from and the causing fault index"""
        onsets: Dict[str, float] = {}
        via: Dict[str, str] = {}
        causes: Dict[str, int] = {}
        for index, fault in enumerate(faults):
            reached = {fault.root: fault.start_s}
            came_from: Dict[str, str] = {}
            heap = [(fault.start_s, fault.root)]
            settled = set()
            while heap:
                onset, member = heapq.heappop(heap)
                if member in settled:
                    continue
                settled.add(member)
                for successor in sorted(graph.neighbors(member, Direction.SUCCESSORS)):
                    crosses = rng.random() < fault.probability
                    lag = 0.0
                    if graph.kind(successor) is MemberKind.ACTIVE:
                        lag = max(0.0, float(rng.normal(fault.lag_mean_s, fault.lag_std_s)))
                    if not crosses:
                        continue
                    candidate = onset + lag
                    if candidate < reached.get(successor, math.inf):
                        reached[successor] = candidate
                        came_from[successor] = member
                        heapq.heappush(heap, (candidate, successor))

            for member, onset in reached.items():
                if onset < onsets.get(member, math.inf):
                    onsets[member] = onset
                    causes[member] = index
                    if member in came_from:
                        via[member] = came_from[member]
                    else:
                        via.pop(member, None)
        return onsets, via, causes

    @staticmethod
    def _process_snapshot(
        graph: SystemGraph,
        final: Dict[str, Tuple[Tuple[str, ...], List[float]]],
    ) -> List[ProcessRecord]:
        try:
            tree = graph.tree_subgraph(PROCESS_LAYER)
        except EmptyTreeError:
            return []

        records = []
        for member_id in sorted(tree.members):
            if not is_process_member(member_id) or member_id == VIRTUAL_ROOT_ID:
                continue
            pid = int(member_id.split(":", 1)[1])
            parent = tree.parent(member_id)
            ppid = int(parent.split(":", 1)[1]) if parent and parent != VIRTUAL_ROOT_ID else 0
            metrics = graph.attributes(member_id)
            name = member_id
            for child in tree.children(member_id):
                if not is_process_member(child) and child in final:
                    fields, values = final[child]
                    metrics = dict(zip(fields, values))
                    name = child
            records.append(ProcessRecord(pid=pid, ppid=ppid, name=name, metrics=metrics))
        return sorted(records, key=lambda r: r.pid)
