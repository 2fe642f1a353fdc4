# shadowrca/domain/mappers/graph_mapper.py
"""
Data mapper for SystemGraph topology documents
"""
from typing import Any, Dict

from pydantic import ValidationError as PydanticValidationError

from shadowrca.core.error_handling.errors import ParseError
from shadowrca.domain.entities.member import AttributeSchema, MemberKind
from shadowrca.domain.entities.system_graph import SystemGraph
from shadowrca.schemas.record_schemas import TopologyDocument


class GraphDataMapper:
    """Mapper for converting between SystemGraph entities and topology dicts"""

    def to_dict(self, graph: SystemGraph) -> Dict[str, Any]:
        """
        Convert a graph to its topology document

        Members and edges keep insertion order, so identical mutation
        sequences serialize identically.

        Args:
            graph: The graph to convert

        Returns:
            Dictionary with keys schema, members, edges
        """
        return {
            "schema": {
                "active": list(graph.schema.active),
                "passive": list(graph.schema.passive),
                "layer_count": graph.layer_count,
            },
            "members": [
                {"id": m.id, "kind": m.kind.value, "attrs": dict(m.attrs)} for m in graph.members_in_order()
            ],
            "edges": [{"src": e.src, "dst": e.dst, "layer": e.layer} for e in graph.edges_in_order()],
        }

    def from_dict(self, data: Dict[str, Any], source: str | None = None) -> SystemGraph:
        """
        Build a graph from a topology document

        All members are inserted before any edge, so edge order in the
        file never matters for validity.

        Args:
            data: Topology document
            source: Optional file name for diagnostics

        Returns:
            SystemGraph entity
        """
        try:
            document = TopologyDocument.model_validate(data)
        except PydanticValidationError as e:
            raise ParseError(f"invalid topology: {e.errors()[0]['msg']}", path=source) from e

        schema = AttributeSchema(
            active=tuple(document.attribute_schema.active),
            passive=tuple(document.attribute_schema.passive),
        )
        graph = SystemGraph(schema, document.attribute_schema.layer_count)
        for member in document.members:
            graph.add_member(member.id, MemberKind(member.kind), member.attrs)
        for edge in document.edges:
            graph.add_edge(edge.src, edge.dst, edge.layer)
        return graph
