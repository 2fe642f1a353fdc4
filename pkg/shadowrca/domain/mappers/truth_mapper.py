# shadowrca/domain/mappers/truth_mapper.py
"""
Data mapper for simulator ground truth documents
"""
from typing import Any, Dict

from shadowrca.domain.entities.scenario import GroundTruth, PropagationStep
from shadowrca.schemas.record_schemas import GroundTruthDocument


class GroundTruthDataMapper:
    """Mapper for converting between GroundTruth entities and dicts"""

    def to_dict(self, truth: GroundTruth) -> Dict[str, Any]:
        return {
            "root_causes": list(truth.root_causes),
            "onsets": dict(truth.onsets),
            "onset_ticks": dict(truth.onset_ticks),
            "propagation": [
                {"src": step.src, "dst": step.dst, "onset_s": step.onset_s} for step in truth.propagation
            ],
        }

    def from_dict(self, data: Dict[str, Any]) -> GroundTruth:
        document = GroundTruthDocument.model_validate(data)
        return GroundTruth(
            root_causes=list(document.root_causes),
            onsets=dict(document.onsets),
            onset_ticks=dict(document.onset_ticks),
            propagation=[PropagationStep(p.src, p.dst, p.onset_s) for p in document.propagation],
        )
