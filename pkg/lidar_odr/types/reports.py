"""Evaluation report models."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class MapDistanceReport(BaseModel):
    """Nearest-neighbor distance statistics between two reference lines."""
    rmse: float = Field(ge=0)
    avg_distance: float = Field(ge=0)
    sigma: float = Field(ge=0)
    sample_count: int = Field(ge=1)
    eval_length: float = Field(ge=0)
    max_distance: float = Field(0.0, ge=0)


class ContinuityEntry(BaseModel):
    """Leap and kink at the joint between geometry `index` and `index + 1`."""
    index: int
    gap: float = Field(ge=0)
    kink_deg: float = Field(ge=0)


class ContinuityReport(BaseModel):
    """Continuity of all geometry joints against the export tolerances."""
    entries: List[ContinuityEntry] = Field(default_factory=list)
    max_gap: float = 0.0
    max_kink_deg: float = 0.0
    passed: bool = True


class LaneWidthStats(BaseModel):
    """Mean and population standard deviation of adjacent-line distances."""
    mean: float
    sigma: float = Field(ge=0)
    count: int = Field(ge=1)


class PipelineReport(BaseModel):
    """Self-validation summary written next to an exported road."""
    lane_count: int
    lane_widths: List[float]
    geometry_count: int
    road_length: float
    continuity: ContinuityReport
    lane_width: Optional[LaneWidthStats] = None
    map_distance: Optional[MapDistanceReport] = None
    stage_counts: Dict[str, int] = Field(default_factory=dict)
