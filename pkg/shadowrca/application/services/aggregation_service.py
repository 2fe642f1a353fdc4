# shadowrca/application/services/aggregation_service.py
"""
Subtree accumulation over tree layers, process-tree construction and
component binding
"""
from typing import Dict, Iterable, Mapping, Optional, Sequence

import networkx as nx
import numpy as np

from shadowrca.application.services.base_service import BaseService
from shadowrca.application.services.decorators import log_execution
from shadowrca.core.error_handling.errors import (
    AlreadyBoundError,
    CycleDetectedError,
    LayerOutOfRangeError,
    NotActiveError,
    UnknownProcessError,
    ValidationError,
)
from shadowrca.domain.constants.layers import (
    PROCESS_LAYER,
    VIRTUAL_ROOT_ID,
    is_process_member,
    process_member_id,
)
from shadowrca.domain.entities.member import AttributeVector, MemberKind
from shadowrca.domain.entities.process import AccumulationResult, ProcessRecord, ProcessTreeBuild
from shadowrca.domain.entities.system_graph import SystemGraph


class AggregationService(BaseService):
    """Service for top-down aggregation over relationship trees"""

    @log_execution(stage="accumulate")
    def accumulate(self, graph: SystemGraph, layer: int, fields: Sequence[str]) -> AccumulationResult:
        """
        Sum the attributes of every strict descendant, for each tree member

        A member's own attributes never enter its total; leaves get the zero
        vector. Fields a
        member's schema lacks contribute zero. Children are summed in member
        id order so real-valued results are reproducible.

        Args:
            graph: The system graph
            layer: Tree layer (1 <= layer < N)
            fields: Field names to accumulate

        Returns:
            AccumulationResult with an entry per tree member
        """
        fields = tuple(dict.fromkeys(fields))
        tree = graph.tree_subgraph(layer)

        walk = nx.DiGraph()
        walk.add_node(tree.root)
        pending = [tree.root]
        while pending:
            parent = pending.pop()
            for child in tree.children(parent):
                walk.add_edge(parent, child)
                pending.append(child)

        totals: Dict[str, np.ndarray] = {}
        for member in nx.dfs_postorder_nodes(walk, source=tree.root):
            total = np.zeros(len(fields), dtype=float)
            for child in tree.children(member):
                total += totals[child] + self._vector_of(graph, child, fields)
            totals[member] = total

        self.logger.debug("subtree_totals_accumulated", layer=layer, members=len(totals), fields=list(fields))
        return AccumulationResult(
            layer=layer,
            fields=fields,
            values={m: dict(zip(fields, vector.tolist())) for m, vector in sorted(totals.items())},
        )

    def accumulate_layer_totals(self, graph: SystemGraph, layer: int, fields: Sequence[str]) -> AttributeVector:
        """Attribute sum over every non-root tree member; equals the root's accumulated total"""
        fields = tuple(dict.fromkeys(fields))
        tree = graph.tree_subgraph(layer)
        total = np.zeros(len(fields), dtype=float)
        for member in sorted(tree.members - {tree.root}):
            total += self._vector_of(graph, member, fields)
        return dict(zip(fields, total.tolist()))

    @log_execution(stage="process_tree")
    def build_process_tree(
        self,
        graph: SystemGraph,
        records: Iterable[ProcessRecord],
        layer: int = PROCESS_LAYER,
    ) -> ProcessTreeBuild:
        """
        Materialize a process snapshot as "proc:<pid>" members on a tree layer

        A parent pid missing from the snapshot makes the process a root. With
        two or more roots a passive "proc:virtual-root" becomes their common
        parent. Rebuilding from a snapshot of the same processes refreshes
        their attributes and leaves the edge set unchanged.

        Raises:
            LayerOutOfRangeError: layer is not a tree layer
            CycleDetectedError: the parent relation contains a cycle
        """
        if not isinstance(layer, int) or layer < 1 or layer >= graph.layer_count:
            raise LayerOutOfRangeError(layer, graph.layer_count)

        by_pid: Dict[int, ProcessRecord] = {}
        for record in records:
            if record.pid in by_pid:
                raise ValidationError(f"Duplicate pid {record.pid} in process snapshot", "DUPLICATE_PID")
            by_pid[record.pid] = record

        parents: Dict[int, Optional[int]] = {}
        for pid, record in by_pid.items():
            resolvable = record.ppid != 0 and record.ppid in by_pid
            if record.ppid != 0 and not resolvable:
                self.logger.info("process_parent_missing", pid=pid, ppid=record.ppid)
            parents[pid] = record.ppid if resolvable else None
        self._check_acyclic(parents)

        for pid in sorted(by_pid):
            member_id = process_member_id(pid)
            attrs = graph.schema.project(MemberKind.ACTIVE, by_pid[pid].metrics)
            if graph.has_member(member_id):
                graph.update_attributes(member_id, attrs)
            else:
                graph.add_member(member_id, MemberKind.ACTIVE, attrs)

        for pid in sorted(by_pid):
            ppid = parents[pid]
            if ppid is not None:
                graph.add_edge(process_member_id(ppid), process_member_id(pid), layer)

        roots = tuple(process_member_id(pid) for pid in sorted(by_pid) if parents[pid] is None)
        virtual_root = len(roots) > 1
        if virtual_root:
            if not graph.has_member(VIRTUAL_ROOT_ID):
                graph.add_member(VIRTUAL_ROOT_ID, MemberKind.PASSIVE, graph.schema.zero_vector(MemberKind.PASSIVE))
            for root in roots:
                graph.add_edge(VIRTUAL_ROOT_ID, root, layer)

        self.logger.info(
            "process_tree_built", layer=layer, processes=len(by_pid), roots=len(roots), virtual_root=virtual_root
        )
        return ProcessTreeBuild(layer=layer, roots=roots, virtual_root=virtual_root)

    def bind_processes(
        self,
        graph: SystemGraph,
        bindings: Mapping[str, int],
        layer: int = PROCESS_LAYER,
    ) -> SystemGraph:
        """
        Attach components as children of their process members

        Raises:
            UnknownMemberError: the component does not exist
            NotActiveError: the component is a passive member
            UnknownProcessError: no "proc:<pid>" member exists
            AlreadyBoundError: the component already has a parent on the layer
        """
        for member_id, pid in sorted(bindings.items()):
            if graph.kind(member_id) is not MemberKind.ACTIVE:
                raise NotActiveError(member_id)
            process_id = process_member_id(pid)
            if not graph.has_member(process_id):
                raise UnknownProcessError(pid)
            current = graph.parent(member_id, layer)
            if current is not None:
                raise AlreadyBoundError(member_id, current)
            graph.add_edge(process_id, member_id, layer)
            self.logger.debug("component_bound", member=member_id, pid=pid)
        return graph

    def bound_components(self, graph: SystemGraph, layer: int = PROCESS_LAYER) -> Dict[str, str]:
        """Component -> process member for every binding on the layer"""
        return {
            edge.dst: edge.src
            for edge in graph.edges(layer)
            if is_process_member(edge.src) and not is_process_member(edge.dst)
        }

    # -- internals ---------------------------------------------------------

    @staticmethod
    def _vector_of(graph: SystemGraph, member_id: str, fields: Sequence[str]) -> np.ndarray:
        attrs = graph.attributes(member_id)
        return np.array([attrs.get(name, 0.0) for name in fields], dtype=float)

    @staticmethod
    def _check_acyclic(parents: Mapping[int, Optional[int]]) -> None:
        relation = nx.DiGraph()
        relation.add_nodes_from(parents)
        relation.add_edges_from((ppid, pid) for pid, ppid in parents.items() if ppid is not None)
        try:
            cycle = nx.find_cycle(relation)
        except nx.NetworkXNoCycle:
            return
        raise CycleDetectedError(sorted({u for u, _ in cycle}))

