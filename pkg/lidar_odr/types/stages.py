"""Artifacts handed between pipeline stages."""

from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field

from .odr import OdrDocument
from .reports import ContinuityReport
from .road import CandidateLine, Cluster, RelativeLookup, RoadModel, Superline


class BuildResult(BaseModel):
    """Road model plus the intermediate products it was derived from."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    model: RoadModel
    clusters: List[Cluster] = Field(default_factory=list)
    lines: List[CandidateLine] = Field(default_factory=list)
    superlines: List[Superline] = Field(default_factory=list)
    lookups: Dict[int, RelativeLookup] = Field(default_factory=dict)


class ExportResult(BaseModel):
    """Exported document and its continuity check."""
    document: OdrDocument
    continuity: ContinuityReport
