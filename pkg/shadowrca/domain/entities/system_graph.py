# shadowrca/domain/entities/system_graph.py
"""
Layered system graph: typed members, attribute vectors and per-layer edges

Members are active (components) or passive (distributors). Layer 0 holds
the communication edges (send, publish, subscribe); every layer i >= 1 is
a forest that must collapse to a rooted tree before tree queries run.
"""
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

import networkx as nx

from shadowrca.core.error_handling.errors import (
    DuplicateIdError,
    EmptyTreeError,
    KindViolationError,
    LayerOutOfRangeError,
    MultipleRootsError,
    NotActiveError,
    SelfLoopError,
    TreeViolationError,
    UnknownMemberError,
    ValidationError,
)
from shadowrca.domain.constants.layers import COMM_LAYER, DEFAULT_LAYER_COUNT
from shadowrca.domain.entities.member import (
    AttributeSchema,
    AttributeVector,
    Direction,
    Edge,
    EdgeType,
    KindFilter,
    Member,
    MemberKind,
)
from shadowrca.monitoring.logging_config import get_logger
from shadowrca.utils.validators import validate_attributes, validate_member_id

logger = get_logger(__name__)

_ALLOWED_COMM_PAIRS = {
    (MemberKind.ACTIVE, MemberKind.ACTIVE): EdgeType.SEND,
    (MemberKind.ACTIVE, MemberKind.PASSIVE): EdgeType.PUBLISH,
    (MemberKind.PASSIVE, MemberKind.ACTIVE): EdgeType.SUBSCRIBE,
}


@dataclass(frozen=True)
class CommSubgraph:
    """Edge-induced layer-0 subgraph: members touching a communication edge, plus those edges"""

    members: FrozenSet[str]
    edges: FrozenSet[Edge]

    @property
    def is_empty(self) -> bool:
        return not self.members


@dataclass(frozen=True)
class TreeView:
    """Edge-induced rooted tree of one layer with parent/children navigation"""

    layer: int
    root: str
    members: FrozenSet[str]
    parents: Mapping[str, str]
    children_map: Mapping[str, Tuple[str, ...]]

    def parent(self, member_id: str) -> Optional[str]:
        return self.parents.get(member_id)

    def children(self, member_id: str) -> Tuple[str, ...]:
        """Children sorted by member id"""
        return self.children_map.get(member_id, ())

    @property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset(Edge(p, c, self.layer) for c, p in self.parents.items())


class SystemGraph:
    """
    Typed layered directed graph.

    Mutations are serialized through one lock; read queries take the same
    lock so they always observe a fully applied mutation.
    """

    def __init__(self, schema: AttributeSchema, layer_count: int = DEFAULT_LAYER_COUNT):
        if layer_count < 1:
            raise ValidationError(f"layer_count must be >= 1, got {layer_count}")
        self._schema = schema
        self._layer_count = layer_count
        self._graph = nx.MultiDiGraph()
        # child -> parent per tree layer
        self._parents: Dict[int, Dict[str, str]] = {i: {} for i in range(1, layer_count)}
        self._edge_order: List[Edge] = []
        self._lock = threading.RLock()

    # -- properties --------------------------------------------------------

    @property
    def schema(self) -> AttributeSchema:
        return self._schema

    @property
    def layer_count(self) -> int:
        return self._layer_count

    def __len__(self) -> int:
        with self._lock:
            return self._graph.number_of_nodes()

    def __contains__(self, member_id: object) -> bool:
        with self._lock:
            return member_id in self._graph

    # -- mutation ----------------------------------------------------------

    def add_member(self, member_id: str, kind: MemberKind, attrs: Mapping[str, float]) -> "SystemGraph":
        """Insert a member with its attribute vector"""
        validate_member_id(member_id)
        values = validate_attributes(attrs, self._schema.fields_for(kind), member_id)
        with self._lock:
            if member_id in self._graph:
                raise DuplicateIdError(member_id)
            self._graph.add_node(member_id, kind=kind, attrs=values)
        logger.debug("member_added", member=member_id, kind=kind.value)
        return self

    def update_attributes(self, member_id: str, attrs: Mapping[str, float]) -> "SystemGraph":
        """Replace the attribute vector under the same schema rules"""
        with self._lock:
            node = self._node(member_id)
            node["attrs"] = validate_attributes(attrs, self._schema.fields_for(node["kind"]), member_id)
        return self

    def add_edge(self, src: str, dst: str, layer: int) -> "SystemGraph":
        """Insert an edge; duplicate insertion is idempotent"""
        self._check_layer(layer)
        with self._lock:
            src_kind = self._node(src)["kind"]
            dst_kind = self._node(dst)["kind"]
            if src == dst:
                raise SelfLoopError(src, layer)
            if self._graph.has_edge(src, dst, key=layer):
                return self

            if layer == COMM_LAYER:
                if (src_kind, dst_kind) not in _ALLOWED_COMM_PAIRS:
                    raise KindViolationError(src, dst)
            else:
                parents = self._parents[layer]
                if dst in parents:
                    raise TreeViolationError(src, dst, layer, f"'{dst}' already has parent '{parents[dst]}'")
                # Walking up from src must never reach dst
                cursor: Optional[str] = src
                while cursor is not None:
                    if cursor == dst:
                        raise TreeViolationError(src, dst, layer, "edge would close a cycle")
                    cursor = parents.get(cursor)
                parents[dst] = src

            self._graph.add_edge(src, dst, key=layer)
            self._edge_order.append(Edge(src, dst, layer))
        logger.debug("edge_added", src=src, dst=dst, layer=layer)
        return self

    # -- member queries ----------------------------------------------------

    def has_member(self, member_id: str) -> bool:
        return member_id in self

    def kind(self, member_id: str) -> MemberKind:
        with self._lock:
            return self._node(member_id)["kind"]

    def attributes(self, member_id: str) -> AttributeVector:
        """Attribute vector of member_id as a fresh dict"""
        with self._lock:
            return dict(self._node(member_id)["attrs"])

    def member(self, member_id: str) -> Member:
        with self._lock:
            node = self._node(member_id)
            return Member(member_id, node["kind"], dict(node["attrs"]))

    def members(self, kind: Optional[MemberKind] = None) -> List[str]:
        """Member ids sorted, optionally restricted to one kind"""
        with self._lock:
            return sorted(
                m for m, data in self._graph.nodes(data=True) if kind is None or data["kind"] is kind
            )

    def members_in_order(self) -> List[Member]:
        """Members in insertion order (the serialization order)"""
        with self._lock:
            return [Member(m, d["kind"], dict(d["attrs"])) for m, d in self._graph.nodes(data=True)]

    # -- edge queries ------------------------------------------------------

    def edges_in_order(self) -> List[Edge]:
        """Edges in insertion order (the serialization order)"""
        with self._lock:
            return list(self._edge_order)

    def has_edge(self, src: str, dst: str, layer: int) -> bool:
        with self._lock:
            return self._graph.has_edge(src, dst, key=layer)

    def edges(self, layer: Optional[int] = None) -> List[Edge]:
        """Edges sorted by (src, dst, layer), optionally restricted to one layer"""
        with self._lock:
            return sorted(
                Edge(u, v, k) for u, v, k in self._graph.edges(keys=True) if layer is None or k == layer
            )

    def edge_type(self, edge: Edge) -> EdgeType:
        if edge.layer != COMM_LAYER:
            return EdgeType.TREE
        return _ALLOWED_COMM_PAIRS[(self.kind(edge.src), self.kind(edge.dst))]

    def neighbors(
        self,
        member_id: str,
        direction: Direction,
        kind_filter: KindFilter = KindFilter.ALL,
    ) -> Set[str]:
        """Layer-0 predecessors or successors, restricted by kind"""
        with self._lock:
            self._node(member_id)
            if direction is Direction.PREDECESSORS:
                candidates = (u for u, _, k in self._graph.in_edges(member_id, keys=True) if k == COMM_LAYER)
            else:
                candidates = (v for _, v, k in self._graph.out_edges(member_id, keys=True) if k == COMM_LAYER)
            return {m for m in candidates if kind_filter.accepts(self._graph.nodes[m]["kind"])}

    def active_peers(self, member_id: str, direction: Direction) -> Set[str]:
        """Active members reachable in one hop directly or through one passive member"""
        with self._lock:
            if self._node(member_id)["kind"] is not MemberKind.ACTIVE:
                raise NotActiveError(member_id)
            peers = self.neighbors(member_id, direction, KindFilter.ACTIVE_ONLY)
            for distributor in self.neighbors(member_id, direction, KindFilter.PASSIVE_ONLY):
                peers |= self.neighbors(distributor, direction, KindFilter.ACTIVE_ONLY)
            return peers

    # -- subgraph views ----------------------------------------------------

    def comm_subgraph(self) -> CommSubgraph:
        """G_0: every layer-0 edge and exactly the members incident to one"""
        with self._lock:
            edges = frozenset(self._layer_edges(COMM_LAYER))
        members = frozenset(m for e in edges for m in (e.src, e.dst))
        return CommSubgraph(members=members, edges=edges)

    def layer_members(self, layer: int) -> Set[str]:
        """M_i: members incident to at least one layer-i edge"""
        self._check_layer(layer)
        with self._lock:
            return {m for e in self._layer_edges(layer) for m in (e.src, e.dst)}

    def roots(self, layer: int) -> List[str]:
        """Members of M_i without a parent on tree layer i"""
        self._check_tree_layer(layer)
        with self._lock:
            parents = self._parents[layer]
            return sorted(m for m in self.layer_members(layer) if m not in parents)

    def parent(self, member_id: str, layer: int) -> Optional[str]:
        self._check_tree_layer(layer)
        with self._lock:
            self._node(member_id)
            return self._parents[layer].get(member_id)

    def tree_subgraph(self, layer: int) -> TreeView:
        """The layer as a rooted tree; it must have exactly one root"""
        self._check_tree_layer(layer)
        with self._lock:
            parents = dict(self._parents[layer])
        if not parents:
            raise EmptyTreeError(layer)

        members = frozenset(parents) | frozenset(parents.values())
        roots = sorted(m for m in members if m not in parents)
        if len(roots) != 1:
            raise MultipleRootsError(layer, roots)

        children: Dict[str, List[str]] = {}
        for child, parent in parents.items():
            children.setdefault(parent, []).append(child)
        return TreeView(
            layer=layer,
            root=roots[0],
            members=members,
            parents=parents,
            children_map={p: tuple(sorted(cs)) for p, cs in children.items()},
        )

    # -- whole-graph -------------------------------------------------------

    def validate(self) -> None:
        """Re-check every structural invariant by traversal"""
        with self._lock:
            for edge in self._layer_edges(COMM_LAYER):
                pair = (self._graph.nodes[edge.src]["kind"], self._graph.nodes[edge.dst]["kind"])
                if pair not in _ALLOWED_COMM_PAIRS:
                    raise KindViolationError(edge.src, edge.dst)
            for layer in range(1, self._layer_count):
                layer_edges = list(self._layer_edges(layer))
                in_degree: Dict[str, int] = {}
                for edge in layer_edges:
                    in_degree[edge.dst] = in_degree.get(edge.dst, 0) + 1
                    if in_degree[edge.dst] > 1:
                        raise TreeViolationError(edge.src, edge.dst, layer, "second parent")
                tree = nx.DiGraph()
                tree.add_edges_from((e.src, e.dst) for e in layer_edges)
                if not nx.is_directed_acyclic_graph(tree):
                    raise TreeViolationError("?", "?", layer, "cycle")
            for member_id, data in self._graph.nodes(data=True):
                validate_attributes(data["attrs"], self._schema.fields_for(data["kind"]), member_id)

    def copy(self) -> "SystemGraph":
        """Deep copy with identical insertion order"""
        with self._lock:
            clone = SystemGraph(self._schema, self._layer_count)
            for member_id, data in self._graph.nodes(data=True):
                clone._graph.add_node(member_id, kind=data["kind"], attrs=dict(data["attrs"]))
            for u, v, k in self._graph.edges(keys=True):
                clone._graph.add_edge(u, v, key=k)
            clone._parents = {layer: dict(p) for layer, p in self._parents.items()}
            clone._edge_order = list(self._edge_order)
            return clone

    # -- internals ---------------------------------------------------------

    def _node(self, member_id: str) -> dict:
        try:
            return self._graph.nodes[member_id]
        except KeyError:
            raise UnknownMemberError(member_id) from None

    def _layer_edges(self, layer: int) -> Iterable[Edge]:
        return (Edge(u, v, k) for u, v, k in self._graph.edges(keys=True) if k == layer)

    def _check_layer(self, layer: int) -> None:
        if not isinstance(layer, int) or layer < 0 or layer >= self._layer_count:
            raise LayerOutOfRangeError(layer, self._layer_count)

    def _check_tree_layer(self, layer: int) -> None:
        if not isinstance(layer, int) or layer < 1 or layer >= self._layer_count:
            raise LayerOutOfRangeError(layer, self._layer_count)
