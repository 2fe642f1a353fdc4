# tests/unit/application/services/test_aggregation_service.py
"""
Tests for AggregationService
"""
import random
import time

import pytest

from shadowrca.application.services.aggregation_service import AggregationService
from shadowrca.core.error_handling.errors import (
    AlreadyBoundError,
    CycleDetectedError,
    LayerOutOfRangeError,
    MultipleRootsError,
    NotActiveError,
    UnknownProcessError,
    ValidationError,
)
from shadowrca.domain.constants.layers import VIRTUAL_ROOT_ID
from shadowrca.domain.entities.member import MemberKind
from shadowrca.domain.entities.process import ProcessRecord
from shadowrca.domain.entities.system_graph import SystemGraph
from tests.factories import SCHEMA, random_tree

FIELDS = ("load", "memory", "depth")


def subtree_totals_oracle(graph, parents, fields):
    """Add the attributes of every member to each of its strict ancestors"""
    totals = {m: {f: 0.0 for f in fields} for m in parents}
    for member in parents:
        attrs = graph.attributes(member)
        cursor = parents[member]
        while cursor is not None:
            for f in fields:
                totals[cursor][f] += attrs.get(f, 0.0)
            cursor = parents[cursor]
    return totals


class TestAccumulate:
    """Subtree accumulation over tree layers"""

    def setup_method(self):
        self.service = AggregationService()

    def test_three_level_tree(self):
        graph = SystemGraph(SCHEMA)
        for member, load in (("r", 100.0), ("x", 1.0), ("y", 2.0), ("z", 4.0)):
            graph.add_member(member, MemberKind.ACTIVE, {"load": load, "memory": 0.0})
        graph.add_edge("r", "x", 1)
        graph.add_edge("x", "y", 1)
        graph.add_edge("r", "z", 1)

        totals = self.service.accumulate(graph, 1, ["load"])
        assert totals["r"] == {"load": 7.0}
        assert totals["x"] == {"load": 2.0}
        assert totals["y"] == {"load": 0.0}
        assert list(totals.values) == ["r", "x", "y", "z"]

    def test_missing_fields_contribute_zero(self, graph):
        graph.add_edge("a", "t_ab", 1)
        graph.update_attributes("t_ab", {"depth": 3.0})
        assert self.service.accumulate(graph, 1, FIELDS)["a"] == {"load": 0.0, "memory": 0.0, "depth": 3.0}

    def test_multiple_roots(self, graph):
        graph.add_edge("a", "b", 1)
        graph.add_edge("c", "t_bc", 1)
        with pytest.raises(MultipleRootsError):
            self.service.accumulate(graph, 1, FIELDS)

    def test_layer_totals_match_root(self):
        graph, _ = random_tree(random.Random(5), 40)
        totals = self.service.accumulate(graph, 1, FIELDS)
        root = graph.tree_subgraph(1).root
        assert self.service.accumulate_layer_totals(graph, 1, FIELDS) == totals[root]

    def test_matches_oracle_on_random_trees(self):
        rng = random.Random(42)
        started = time.perf_counter()
        for case in range(200):
            integer = case % 2 == 0
            graph, parents = random_tree(rng, rng.randint(1, 500) if case else 1, integer=integer)
            if len(parents) == 1:
                continue
            totals = self.service.accumulate(graph, 1, FIELDS)
            expected = subtree_totals_oracle(graph, parents, FIELDS)
            for member, vector in expected.items():
                for f in FIELDS:
                    if integer:
                        assert totals[member][f] == vector[f]
                    else:
                        assert totals[member][f] == pytest.approx(vector[f], abs=1e-9, rel=0)
        assert time.perf_counter() - started < 5.0


class TestProcessTree:
    """Process snapshot ingestion and binding"""

    def setup_method(self):
        self.service = AggregationService()
        self.records = [
            ProcessRecord(1, 0, "init", {"load": 1.0, "memory": 10.0}),
            ProcessRecord(2, 1, "worker", {"load": 2.0, "memory": 20.0, "extra": 5.0}),
            ProcessRecord(3, 1, "worker", {"load": 3.0}),
        ]

    def test_build_single_root(self, graph):
        build = self.service.build_process_tree(graph, self.records)
        assert build.roots == ("proc:1",)
        assert not build.virtual_root
        assert graph.attributes("proc:2") == {"load": 2.0, "memory": 20.0}
        assert graph.attributes("proc:3") == {"load": 3.0, "memory": 0.0}
        assert self.service.accumulate(graph, 1, ["load"])["proc:1"] == {"load": 5.0}

    def test_missing_parent_yields_virtual_root(self, graph):
        records = self.records + [ProcessRecord(9, 77, "orphan", {"load": 1.0})]
        build = self.service.build_process_tree(graph, records)
        assert build.virtual_root
        assert build.roots == ("proc:1", "proc:9")
        assert graph.tree_subgraph(1).root == VIRTUAL_ROOT_ID
        assert graph.kind(VIRTUAL_ROOT_ID) is MemberKind.PASSIVE
        assert graph.attributes(VIRTUAL_ROOT_ID) == {"depth": 0.0}

    def test_rebuild_refreshes_attributes_only(self, graph):
        self.service.build_process_tree(graph, self.records)
        edges = graph.edges(1)
        refreshed = [ProcessRecord(r.pid, r.ppid, r.name, {"load": 9.0}) for r in self.records]
        self.service.build_process_tree(graph, refreshed)
        assert graph.edges(1) == edges
        assert graph.attributes("proc:2")["load"] == 9.0

    def test_cycle_detected(self, graph):
        records = [ProcessRecord(1, 2), ProcessRecord(2, 1)]
        with pytest.raises(CycleDetectedError):
            self.service.build_process_tree(graph, records)

    def test_duplicate_pid(self, graph):
        with pytest.raises(ValidationError) as excinfo:
            self.service.build_process_tree(graph, [ProcessRecord(1, 0), ProcessRecord(1, 0)])
        assert excinfo.value.error_code == "DUPLICATE_PID"

    def test_layer_zero_rejected(self, graph):
        with pytest.raises(LayerOutOfRangeError):
            self.service.build_process_tree(graph, self.records, layer=0)

    def test_bind_processes(self, graph):
        self.service.build_process_tree(graph, self.records)
        self.service.bind_processes(graph, {"a": 2, "b": 3})
        assert graph.parent("a", 1) == "proc:2"
        assert self.service.bound_components(graph) == {"a": "proc:2", "b": "proc:3"}
        assert self.service.accumulate(graph, 1, ["load"])["proc:2"] == {"load": 0.0}

    def test_bind_errors(self, graph):
        self.service.build_process_tree(graph, self.records)
        with pytest.raises(NotActiveError):
            self.service.bind_processes(graph, {"t_ab": 2})
        with pytest.raises(UnknownProcessError):
            self.service.bind_processes(graph, {"a": 404})
        self.service.bind_processes(graph, {"a": 2})
        with pytest.raises(AlreadyBoundError):
            self.service.bind_processes(graph, {"a": 3})
