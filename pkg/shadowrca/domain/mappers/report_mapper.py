# shadowrca/domain/mappers/report_mapper.py
"""
Data mapper for analysis reports (JSON document and text rendering)
"""
from collections import defaultdict
from typing import Any, Dict, List, Optional

from shadowrca.domain.entities.alert import PluginFailure
from shadowrca.domain.entities.report import AnalysisResult
from shadowrca.domain.entities.trajectory import FaultTrajectory, LagModel
from shadowrca.utils.text_table import render_table


class ReportDataMapper:
    """Mapper for converting analysis results to versioned report documents"""

    def __init__(self, schema_version: str = "1.0"):
        self.schema_version = schema_version

    def to_dict(self, result: AnalysisResult) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "status": result.status,
            "trigger": result.trigger,
            "methods": list(result.methods),
            "ticks": result.ticks,
            "alert_count": result.alert_count,
            "j_extract": result.snapshot.j,
            "extracted_at": result.snapshot.extracted_at,
            "subgraph": {
                "members": len(result.snapshot.members),
                "edges": len(result.snapshot.edges),
                "watchlist": len(result.snapshot.watchlist),
            },
            "initial": result.initial,
            "lag_model": self._lag_model(result.lag_model),
            "root_cause_candidates": list(result.root_cause_candidates),
            "trajectories": [self._trajectory(rank, t) for rank, t in enumerate(result.trajectories, start=1)],
            "plugin_failures": self._failures(result.failures),
        }

    def to_text(self, report: Dict[str, Any]) -> str:
        """Render a report document as a plain-text summary"""
        lines = [
            f"status: {report['status']}",
            f"trigger: {report['trigger']} (j={report['j_extract']}, extracted_at={report['extracted_at']})",
            f"alerts: {report['alert_count']}",
            f"initial symptom: {report['initial'] or '-'}",
        ]
        if report["plugin_failures"]:
            names = ", ".join(f"{f['plugin']} x{f['count']}" for f in report["plugin_failures"])
            lines.append(f"plugin failures: {names}")
        text = "\n".join(lines) + "\n"
        if not report["trajectories"]:
            return text

        rows = [
            (
                t["rank"],
                t["root_cause"],
                t["length"],
                f"{t['avg_strength']:.3f}",
                " <- ".join(t["members"]),
            )
            for t in report["trajectories"]
        ]
        return text + "\n" + render_table(("rank", "root cause", "length", "avg strength", "trajectory"), rows)

    @staticmethod
    def _trajectory(rank: int, trajectory: FaultTrajectory) -> Dict[str, Any]:
        return {
            "rank": rank,
            "members": list(trajectory.members),
            "strengths": list(trajectory.strengths),
            "methods": [list(names) for names in trajectory.methods],
            "avg_strength": trajectory.avg_strength,
            "length": trajectory.length,
            "root_cause": trajectory.root_cause,
        }

    @staticmethod
    def _lag_model(model: Optional[LagModel]) -> Optional[Dict[str, Any]]:
        if model is None:
            return None
        return {
            "mean_s": model.mean_s,
            "std_s": model.std_s,
            "count": model.count,
            "usable": model.usable,
            "histogram": dict(model.histogram),
        }

    @staticmethod
    def _failures(failures: tuple) -> List[Dict[str, Any]]:
        grouped: Dict[str, List[PluginFailure]] = defaultdict(list)
        for failure in failures:
            grouped[failure.plugin].append(failure)
        return [
            {
                "plugin": plugin,
                "count": len(items),
                "first_member": items[0].member,
                "first_timestamp": items[0].timestamp,
                "error": items[0].error,
            }
            for plugin, items in sorted(grouped.items())
        ]
