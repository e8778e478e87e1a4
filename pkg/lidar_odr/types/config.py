"""Configuration models for every pipeline stage."""

import math
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .scene import SceneSpec

# Average height of European curbstones; markings sit below plane + raise.
PLANE_RAISE = 0.15

# Uniform slices of about 6 m (the German dash length) for long solid markings.
SLICE_POLICY = "ceil"

NOMINAL_LANE_WIDTH = 3.5


class _StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid", validate_assignment=True)


class ExtractionConfig(_StrictModel):
    """Per-frame marking extraction parameters."""
    max_range: float = Field(60.0, gt=0)
    sensor_height: float = Field(1.9, gt=0)
    plane_raise: float = Field(PLANE_RAISE, gt=0)
    reflectivity_threshold: float = Field(0.5, gt=0, lt=1)
    outlier_radius: float = Field(0.5, gt=0)
    outlier_min_neighbors: int = Field(4, ge=1)
    ransac_iterations: int = Field(200, ge=1)
    ransac_inlier_tol: float = Field(0.05, gt=0)
    rng_seed: int = 0


class ClusterConfig(_StrictModel):
    """Density clustering and solid-line slicing parameters."""
    dbscan_eps: float = Field(0.4, gt=0)
    dbscan_min_pts: int = Field(5, ge=1)
    split_threshold: float = Field(30.0, gt=0)
    slice_length: float = Field(6.0, gt=0)
    line_ransac_iterations: int = Field(100, ge=1)
    line_ransac_tol: float = Field(0.05, gt=0)
    rng_seed: int = 0

    @model_validator(mode="after")
    def _slice_below_threshold(self) -> "ClusterConfig":
        if not self.split_threshold > self.slice_length:
            raise ValueError("split_threshold must exceed slice_length")
        return self


class SearchConfig(_StrictModel):
    """Directional mark search and candidate combination parameters."""
    step: float = Field(3.0, gt=0)
    search_length: float = Field(27.0, gt=0)
    ball_radius: float = Field(1.75, gt=0)
    gamma: float = Field(0.5, ge=0, le=1)
    combine_length: float = Field(63.0, gt=0)
    seg_attach_tol: float = Field(0.5, gt=0)
    curvature_aware: bool = True
    max_combine_angle_deg: float = Field(30.0, gt=0, le=90)

    @model_validator(mode="after")
    def _step_within_length(self) -> "SearchConfig":
        if self.step > self.search_length:
            raise ValueError("step must not exceed search_length")
        return self


class TopologyConfig(_StrictModel):
    """Lateral relation resolution parameters."""
    nominal_lane_width: float = Field(NOMINAL_LANE_WIDTH, gt=0)
    max_ray_factor: float = Field(2.0, gt=0)
    quantization: Literal["round", "modulo"] = "round"
    contradiction_ratio: float = Field(0.5, gt=0, le=1)
    width_band: Tuple[float, float] = (2.5, 4.5)
    default_lane_width: float = Field(NOMINAL_LANE_WIDTH, gt=0)

    @property
    def max_ray(self) -> float:
        return self.max_ray_factor * self.nominal_lane_width


class ExportConfig(_StrictModel):
    """OpenDRIVE export parameters."""
    segment_length: float = Field(100.0, gt=0)
    lookahead_fraction: float = Field(0.125, gt=0, lt=0.5)
    endpoint_weight: float = Field(100.0, ge=1)
    sample_step: float = Field(1.0, gt=0)
    constrain_start_heading: bool = True
    max_gap: float = Field(0.01, gt=0)
    max_kink_deg: float = Field(0.5, gt=0)
    strict_continuity: bool = False
    road_name: str = "reconstructed"
    geo_reference: str = "+proj=tmerc +lat_0=0 +lon_0=0 +k=1 +x_0=0 +y_0=0 +ellps=WGS84 +units=m"

    @property
    def lookahead_distance(self) -> float:
        return self.lookahead_fraction * self.segment_length

    @property
    def max_kink(self) -> float:
        return math.radians(self.max_kink_deg)


class EvaluationConfig(_StrictModel):
    """Map comparison parameters."""
    step: float = Field(1.0, gt=0)
    oversample: int = Field(10, ge=1)


class PipelineConfig(_StrictModel):
    """Composite configuration; defaults are the published values where known."""
    extraction: ExtractionConfig = Field(default_factory=ExtractionConfig)
    clustering: ClusterConfig = Field(default_factory=ClusterConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)
    topology: TopologyConfig = Field(default_factory=TopologyConfig)
    export: ExportConfig = Field(default_factory=ExportConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    seed: int = 0
    threads: Optional[int] = Field(None, ge=1)
    # scene for `synth` when no --scene file is given
    scene: Optional[SceneSpec] = None

    def with_seed(self, seed: int) -> "PipelineConfig":
        """Copy with the global seed propagated into every sub-config seed."""
        return self.model_copy(
            update={
                "seed": seed,
                "extraction": self.extraction.model_copy(update={"rng_seed": seed}),
                "clustering": self.clustering.model_copy(update={"rng_seed": seed}),
            }
        )
